#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sbe/measures.hpp"

using namespace sbe;
using std::numbers::pi;

TEST(Measures, PresetsValidate) {
    EXPECT_TRUE(validate_nu(preset_1d("laplacian-nn")).ok);
    EXPECT_TRUE(validate_pi(preset_1d("deriv-backward")).ok);
    EXPECT_TRUE(validate_pi(preset_1d("deriv-central")).ok);
    auto p = validate_mu(preset_2d("product-pointwise"));
    EXPECT_TRUE(p.ok);
    EXPECT_DOUBLE_EQ(p.info["mass"], 1.0);
    auto s = validate_mu(preset_2d("product-sasamoto-spohn"));
    EXPECT_TRUE(s.ok);
    EXPECT_NEAR(s.info["mass"], 1.0, 1e-15);
}

TEST(Measures, RejectsBadMeasures) {
    // second moment 1 instead of 2
    auto r = validate_nu(AtomicMeasure1D({{-1, 0.5}, {0, -1.0}, {1, 0.5}}));
    EXPECT_FALSE(r.ok);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].check, "second_moment");
    // asymmetric ν
    EXPECT_FALSE(validate_nu(AtomicMeasure1D({{-1, 1.5}, {0, -2.0}, {1, 0.5}})).ok);
    // ν̂ vanishes at k = 1/2 for this one: (δ2 − 2δ0 + δ−2)/4
    EXPECT_FALSE(validate_nu(AtomicMeasure1D({{-2, 0.25}, {0, -0.5}, {2, 0.25}})).ok);
    // π with first moment 2
    EXPECT_FALSE(validate_pi(AtomicMeasure1D({{0, -2.0}, {1, 2.0}})).ok);
    EXPECT_FALSE(validate_mu(AtomicMeasure2D({{{0, 1}, 1.0}})).ok);
    EXPECT_THROW(AtomicMeasure1D({{0, 0.0}}), std::invalid_argument);
    EXPECT_THROW(AtomicMeasure1D({{0, NAN}}), std::invalid_argument);
}

TEST(Measures, FourierNuValues) {
    auto nu = preset_1d("laplacian-nn");
    EXPECT_NEAR(fourier_nu(nu, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(fourier_nu(nu, 0.25), -2.0, 1e-15);
    EXPECT_NEAR(fourier_nu(nu, 1.0), 0.0, 1e-14);
    for (double k : {0.013, 0.2, 0.37, -0.44}) EXPECT_NEAR(fourier_nu(nu, k + 1.0), fourier_nu(nu, k), 1e-13);
}

TEST(Measures, FourierPiAndMu) {
    auto pb = preset_1d("deriv-backward");
    for (double k : {0.1, 0.3, -0.2}) {
        cplx want = 1.0 - std::exp(cplx(0, 2 * pi * k));
        EXPECT_NEAR(std::abs(fourier_pi(pb, k) - want), 0.0, 1e-14);
    }
    auto ss = preset_2d("product-sasamoto-spohn");
    for (double k : {0.0, 0.1, 0.25, 0.5}) {
        cplx v = fourier_mu(ss, -k, k);
        EXPECT_NEAR(v.real(), 2.0 / 3 + std::cos(2 * pi * k) / 3, 1e-14);
        EXPECT_NEAR(v.imag(), 0.0, 1e-14);
    }
    EXPECT_NEAR(fourier_mu(ss, -0.5, 0.5).real(), 1.0 / 3, 1e-14);
    auto pw = preset_2d("product-pointwise");
    EXPECT_NEAR(std::abs(fourier_mu(pw, 0.3, -0.17) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(fourier_mu(ss, 0.0, 0.0).real(), 1.0, 1e-15);
}

TEST(Measures, FOfK) {
    auto nu = preset_1d("laplacian-nn");
    EXPECT_NEAR(f_of_k(nu, 0.0), 4 * pi * pi, 1e-12);
    EXPECT_NEAR(f_of_k(nu, 0.5), 16.0, 1e-12);
    for (int i = 0; i <= 200; ++i) EXPECT_GT(f_of_k(nu, -0.5 + i / 200.0), 0.0);
    for (double k : {1e-3, 0.01, 0.2, 0.49}) {
        double direct = -fourier_nu(nu, k) / (k * k);
        EXPECT_NEAR(f_of_k(nu, k) / direct, 1.0, 1e-8);
    }
    // branches meet at the threshold
    const double t = kTaylorThreshold;
    EXPECT_NEAR(f_of_k(nu, t * (1 - 1e-9)), -fourier_nu(nu, t * (1 + 1e-9)) / (t * t), 1e-6 * 4 * pi * pi);
}

TEST(Measures, GOfK) {
    auto pb = preset_1d("deriv-backward"), pc = preset_1d("deriv-central");
    EXPECT_NEAR(std::abs(g_of_k(pb, 0.0) - cplx(-2 * pi, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g_of_k(pc, 0.0) - cplx(-2 * pi, 0)), 0.0, 1e-12);
    for (double k : {-0.4, -0.1, 0.003, 0.2, 0.5}) {
        EXPECT_NEAR(g_of_k(pc, k).real(), -std::sin(2 * pi * k) / k, 1e-12);
        EXPECT_LE(std::abs(g_of_k(pc, k).imag()), 1e-12);
        EXPECT_NEAR(g_of_k(pb, k).imag(), -(1 - std::cos(2 * pi * k)) / k, 1e-12);
        EXPECT_NEAR(std::abs(std::conj(g_of_k(pb, k)) - g_of_k(pb, -k)), 0.0, 1e-14);
    }
    const double t = kTaylorThreshold;
    cplx direct = fourier_pi(pb, t * (1 + 1e-9)) / cplx(0, t * (1 + 1e-9));
    EXPECT_NEAR(std::abs(g_of_k(pb, t * (1 - 1e-9)) - direct), 0.0, 1e-6 * 2 * pi);
}

TEST(Measures, CosSumOverK2IsStable) {
    std::vector<std::pair<double, double>> atoms = {{0.0, -1.0}, {1.0, 1.0}};
    // Σ w cos(2πka)/k² with Σw = 0: finite limit −2π² Σ w a²
    EXPECT_NEAR(cos_sum_over_k2(atoms, 0.0), -2 * pi * pi, 1e-9);
    for (double k : {1e-6, 1e-3, 0.3})
        EXPECT_NEAR(cos_sum_over_k2(atoms, k), -2.0 * std::pow(std::sin(pi * k) / k, 2), 1e-9);
}

TEST(Measures, JsonRoundTrip) {
    auto ss = preset_2d("product-sasamoto-spohn");
    auto back = measure2d_from_json(to_json(ss));
    EXPECT_EQ(back.atoms, ss.atoms);
    auto nu = measure1d_from_json(nlohmann::json::parse(R"({"atoms": [[-1, 1], [0, -2], [1, 1]]})"));
    EXPECT_EQ(nu.atoms, preset_1d("laplacian-nn").atoms);
    EXPECT_THROW(preset_1d("nope"), std::invalid_argument);
    EXPECT_THROW(measure1d_from_json(nlohmann::json::parse(R"({"atoms": [[1]]})")), std::invalid_argument);
}

TEST(Measures, FamilyFromJson) {
    auto f = family_from_json("sasamoto-spohn");
    EXPECT_DOUBLE_EQ(f.nu_bar, 4.0);
    EXPECT_EQ(family_from_json(to_json(f)).fingerprint(), f.fingerprint());
    EXPECT_NE(family_preset("pointwise-backward").fingerprint(), f.fingerprint());
    try {
        family_from_json(nlohmann::json::parse(R"({"nu": "laplacian-nn", "pi": "deriv-backward"})"));
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("mu"), std::string::npos);
    }
    // invalid measures are refused at family construction
    EXPECT_THROW(OperatorFamily(preset_1d("laplacian-nn"), preset_1d("deriv-backward"),
                                AtomicMeasure2D({{{0, 1}, 1.0}})),
                 std::invalid_argument);
}
