#include <cmath>

#include <gtest/gtest.h>

#include "sbe/renorm.hpp"

using namespace sbe;

namespace {
const OperatorFamily kPB = family_preset("pointwise-backward");
const OperatorFamily kPC = family_preset("pointwise-central");
const OperatorFamily kSS = family_preset("sasamoto-spohn");
}  // namespace

TEST(Renorm, IntegrandPlugIn) {
    EXPECT_NEAR(c2_integrand(kPC, 0.25), 32.0 / 14.0, 1e-12);
    for (auto* f : {&kPB, &kPC, &kSS})
        for (double k : {0.0, 1e-6, 1e-4, 0.3, 0.5}) {
            EXPECT_TRUE(std::isfinite(c2_integrand(*f, k)));
            EXPECT_TRUE(std::isfinite(c21_integrand(*f, k)));
            EXPECT_GT(c2_integrand(*f, k), 0.0);
        }
}

TEST(Renorm, C2RoutesConverge) {
    double prev = 1.0;
    for (int N = 6; N <= 8; ++N) {
        GridSpec g(N, 0);
        const double q = c2_quadrature(kPB, g), l = c2_lattice_sum(kPB, g);
        const double gap = std::abs(q - l) / l;
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LE(prev, 0.05);
}

TEST(Renorm, C2ScalesLikeInverseEps) {
    for (auto* f : {&kPB, &kPC, &kSS})
        for (int N = 5; N < 9; ++N) {
            const double r = c2_lattice_sum(*f, GridSpec(N + 1, 0)) / c2_lattice_sum(*f, GridSpec(N, 0));
            EXPECT_GE(r, 1.8);
            EXPECT_LE(r, 2.2);
        }
}

// E[B(X1,X1)(0)] from the time-stepped covariance recursion, mode by mode
TEST(Renorm, LatticeSumMatchesCovarianceRecursion) {
    GridSpec g(5, 0);
    const int M = g.M();
    const double eps = g.eps();
    double s = 0.0;
    for (int k = -M / 2 + 1; k <= M / 2; ++k) {
        if (k == 0) continue;
        const double m = 1.0 + fourier_nu(kPB.nu, eps * k) / (2 * kPB.nu_bar);
        // v_{n+1} = m² v_n + ε⁴ |π̂/ε|² Var ξ̂ with Var ξ̂ = ε^{-2}
        double v = 0.0;
        for (int n = 0; n < 200000; ++n) v = m * m * v + std::norm(fourier_pi(kPB.pi, eps * k));
        s += v;
    }
    EXPECT_NEAR(s / c2_lattice_sum(kPB, g), 1.0, 1e-9);
}

TEST(Renorm, C21) {
    EXPECT_LE(std::abs(c21_quadrature(kPC)), 1e-10);
    EXPECT_LE(std::abs(c21_modesum(kPC, GridSpec(7, 0))), 1e-10);
    const double q = c21_quadrature(kPB);
    EXPECT_NEAR(q, 5.8268, 1e-3);
    const double m9 = c21_modesum(kPB, GridSpec(9, 0)), m6 = c21_modesum(kPB, GridSpec(6, 0));
    EXPECT_LE(std::abs(q - m9) / std::abs(q), 0.01);
    EXPECT_LE(std::abs(m6 - m9) / std::abs(m9), 0.02);
    EXPECT_EQ(c21(kPB, RenormMethod::quadrature, GridSpec(3, 0)), q);
}

TEST(Renorm, QuadratureRefinement) {
    GridSpec g(7, 0);
    const double a = c2_quadrature(kSS, g, 1024), b = c2_quadrature(kSS, g, 4096);
    EXPECT_NEAR(a / b, 1.0, 1e-10);
}

TEST(Renorm, ComputeConstants) {
    GridSpec g(6, 0);
    auto rc = compute_constants(kPB, g);
    EXPECT_EQ(rc.c2, c2_lattice_sum(kPB, g));
    EXPECT_EQ(rc.c21, c21_modesum(kPB, g));
    EXPECT_EQ(rc.family_fingerprint, kPB.fingerprint());
    auto rq = compute_constants(kPB, g, RenormMethod::quadrature);
    EXPECT_EQ(rq.c2, c2_quadrature(kPB, g));
}

TEST(Renorm, DegenerateFamilyRejected) {
    // cannot happen for a validated family (|ν̂| ≤ ν̄), so force ν̄ by hand: 4ν̄ + ν̂(1/4) = 2 − 2 = 0
    OperatorFamily bad = kPB;
    bad.nu_bar = 0.5;
    EXPECT_THROW(c2_integrand(bad, 0.25), std::domain_error);
    EXPECT_THROW(c21_integrand(bad, 0.25), std::domain_error);
}

TEST(Renorm, MollifiedContinuumScaling) {
    const double a = c2_continuum_mollified(1.0 / 16), b = c2_continuum_mollified(1.0 / 32),
                 c = c2_continuum_mollified(1.0 / 64);
    EXPECT_GT(a, 0.0);
    EXPECT_GE(b / a, 1.7);
    EXPECT_LE(b / a, 2.3);
    EXPECT_GE(c / b, 1.7);
    EXPECT_LE(c / b, 2.3);
    EXPECT_NEAR(c2_continuum_mollified(1.0 / 16, 128) / a, 1.0, 0.01);
    EXPECT_THROW(c2_continuum_mollified(0.3), std::invalid_argument);
}
