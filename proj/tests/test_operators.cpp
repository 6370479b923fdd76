#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sbe/fourier.hpp"
#include "sbe/operators.hpp"

using namespace sbe;
using std::numbers::pi;

namespace {
Slice random_slice(int M, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Slice u(M);
    for (auto& v : u) v = nd(rng);
    return u;
}

// O(M²) transform with the same convention, used as an independent reference
Spectrum direct_dft(const Slice& u) {
    const int M = int(u.size());
    Spectrum F(M);
    for (int i = 0; i < M; ++i) {
        cplx s = 0;
        for (int x = 0; x < M; ++x) s += u[x] * std::exp(cplx(0, -2 * pi * mode_of(i, M) * x / double(M)));
        F[i] = s / double(M);
    }
    return F;
}

const OperatorFamily kSS = family_preset("sasamoto-spohn");
const OperatorFamily kPB = family_preset("pointwise-backward");
const OperatorFamily kPC = family_preset("pointwise-central");
}  // namespace

TEST(Fourier, MatchesDirectTransform) {
    for (int M : {8, 64, 256}) {
        auto u = random_slice(M, M);
        auto a = dft(u), b = direct_dft(u);
        for (int i = 0; i < M; ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-12);
    }
}

TEST(Fourier, DeltaAndRoundTrip) {
    const int M = 64;
    Slice d(M, 0.0);
    d[0] = M;
    for (auto c : dft(d)) EXPECT_NEAR(std::abs(c - 1.0), 0.0, 1e-13);
    auto u = random_slice(M, 3);
    auto back = idft(dft(u));
    for (int x = 0; x < M; ++x) EXPECT_NEAR(back[x], u[x], 1e-12);
}

TEST(Fourier, ConvolutionTheorem) {
    const int M = 32;
    auto f = random_slice(M, 1), g = random_slice(M, 2);
    Slice direct(M, 0.0);
    for (int x = 0; x < M; ++x)
        for (int y = 0; y < M; ++y) direct[x] += f[y] * g[(x - y + M) % M] / M;
    auto c = convolve_space(f, g);
    for (int x = 0; x < M; ++x) EXPECT_NEAR(c[x], direct[x], 1e-12);
    auto F = dft(f), G = dft(g), C = dft(direct);
    for (int i = 0; i < M; ++i) EXPECT_NEAR(std::abs(C[i] - F[i] * G[i]), 0.0, 1e-10);
}

TEST(Operators, LaplacianByHand) {
    Slice u = {1, 0, 0, 0};
    auto l = laplacian(kSS, u, Backend::stencil);
    Slice want = {-4, 2, 0, 2};
    for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(l[i], want[i]);
}

TEST(Operators, ConstantsAreAnnihilated) {
    Slice c(64, 3.5);
    for (double v : laplacian(kPB, c)) EXPECT_NEAR(v, 0.0, 1e-12);
    for (double v : derivative(kPB, c)) EXPECT_NEAR(v, 0.0, 1e-12);
    for (double v : derivative(kPC, c)) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Operators, FourierModeEigenvalue) {
    const int M = 64, q = 5;
    const double eps = 1.0 / M;
    Slice re(M), im(M);
    for (int x = 0; x < M; ++x) re[x] = std::cos(2 * pi * q * x * eps), im[x] = std::sin(2 * pi * q * x * eps);
    const double lam = fourier_nu(kSS.nu, eps * q) / (2 * kSS.nu_bar * eps * eps);
    EXPECT_NEAR(laplacian_symbol(kSS, eps, q), lam, 1e-9);
    auto lr = laplacian(kSS, re), li = laplacian(kSS, im);
    for (int x = 0; x < M; ++x) {
        EXPECT_NEAR(lr[x], lam * re[x], 1e-9);
        EXPECT_NEAR(li[x], lam * im[x], 1e-9);
    }
}

TEST(Operators, BackwardDerivativeOfRamp) {
    const int M = 16;
    const double eps = 1.0 / M;
    Slice u(M);
    for (int x = 0; x < M; ++x) u[x] = x * eps;
    auto d = derivative(kPB, u, Backend::stencil);
    for (int x = 1; x < M; ++x) EXPECT_NEAR(d[x], 1.0, 1e-12);
    EXPECT_NEAR(d[0], (0.0 - (1 - eps)) / eps, 1e-12);   // torus jump
    double s = 0;
    for (double v : derivative(kPB, random_slice(M, 8))) s += v;
    EXPECT_NEAR(s * eps, 0.0, 1e-13);
}

TEST(Operators, BackendsAgree) {
    for (int M : {32, 256}) {
        auto u = random_slice(M, 10 + M);
        for (auto* fam : {&kSS, &kPC}) {
            auto a = laplacian(*fam, u, Backend::stencil), b = laplacian(*fam, u, Backend::spectral);
            auto c = derivative(*fam, u, Backend::stencil), d = derivative(*fam, u, Backend::spectral);
            const double scale = double(M) * M;
            for (int x = 0; x < M; ++x) {
                EXPECT_NEAR(a[x], b[x], 1e-10 * scale);
                EXPECT_NEAR(c[x], d[x], 1e-10 * M);
            }
        }
    }
}

TEST(Operators, Linearity) {
    const int M = 64;
    auto u = random_slice(M, 1), v = random_slice(M, 2);
    Slice w(M);
    for (int x = 0; x < M; ++x) w[x] = 2.5 * u[x] - 0.75 * v[x];
    auto lu = laplacian(kPB, u), lv = laplacian(kPB, v), lw = laplacian(kPB, w);
    auto du = derivative(kPB, u), dv = derivative(kPB, v), dw = derivative(kPB, w);
    for (int x = 0; x < M; ++x) {
        EXPECT_NEAR(lw[x], 2.5 * lu[x] - 0.75 * lv[x], 1e-12 * M * M);
        EXPECT_NEAR(dw[x], 2.5 * du[x] - 0.75 * dv[x], 1e-12 * M);
    }
    auto b1 = twisted_product(kSS, w, v), b2 = twisted_product(kSS, u, v), b3 = twisted_product(kSS, v, v);
    for (int x = 0; x < M; ++x) EXPECT_NEAR(b1[x], 2.5 * b2[x] - 0.75 * b3[x], 1e-12);
}

TEST(Operators, TwistedProductForms) {
    const int M = 32;
    auto f = random_slice(M, 4), g = random_slice(M, 5);
    auto p = twisted_product(kPB, f, g);
    for (int x = 0; x < M; ++x) EXPECT_DOUBLE_EQ(p[x], f[x] * g[x]);
    auto s = twisted_product(kSS, f, f);
    for (int x = 0; x < M; ++x) {
        const double a = f[x], b = f[(x + 1) % M];
        EXPECT_NEAR(s[x], (b * b + a * b + a * a) / 3, 1e-13);
    }
    auto s1 = twisted_product(kSS, f, g), s2 = twisted_product(kSS, g, f);
    for (int x = 0; x < M; ++x) EXPECT_NEAR(s1[x], s2[x], 1e-14);
    Slice a(M, 2.0), b(M, -1.5);
    for (double v : twisted_product(kSS, a, b)) EXPECT_NEAR(v, -3.0, 1e-14);
}

TEST(Operators, Parseval) {
    const int M = 64;
    for (auto* fam : {&kSS, &kPB}) {
        for (int t = 0; t < 5; ++t) EXPECT_LE(check_parseval_twisted(*fam, random_slice(M, t), random_slice(M, 50 + t)), 1e-10);
        Slice c(M, 1.7);
        EXPECT_LE(check_parseval_twisted(*fam, c, c), 1e-12);
    }
    EXPECT_LE(check_parseval_twisted(kPB, random_slice(M, 99), random_slice(M, 98)), 1e-12);
}

TEST(Operators, SasamotoSpohnEnergyNeutral) {
    for (int M : {16, 64, 512}) {
        auto u = random_slice(M, M + 1);
        auto db = derivative(kSS, twisted_product(kSS, u, u));
        double s = 0, a = 0;
        for (int x = 0; x < M; ++x) s += u[x] * db[x], a += std::abs(u[x] * db[x]);
        EXPECT_LE(std::abs(s), 1e-9 * a);
    }
}

TEST(Operators, SupportCheck) {
    Slice u(2, 1.0);
    EXPECT_THROW(laplacian(kSS, u), std::invalid_argument);
    Slice v(6, 1.0);
    EXPECT_THROW(laplacian(kSS, v), std::invalid_argument);
}
