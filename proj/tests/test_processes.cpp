#include <cmath>

#include <gtest/gtest.h>

#include "sbe/experiments.hpp"
#include "sbe/heat_kernel.hpp"
#include "sbe/norms.hpp"
#include "sbe/processes.hpp"
#include "sbe/renorm.hpp"
#include "sbe/singular_kernels.hpp"

using namespace sbe;

namespace {
const OperatorFamily kPB = family_preset("pointwise-backward");
const OperatorFamily kSS = family_preset("sasamoto-spohn");

NoiseField zero_noise(GridSpec g) { return NoiseField{g, 0, std::vector<double>(std::size_t(g.steps) * g.M(), 0.0)}; }
}  // namespace

TEST(Processes, ZeroNoise) {
    GridSpec g(4, 32);
    auto t = lift(zero_noise(g), kSS, 3.0, 0.5);
    for (std::int64_t i = 0; i < t["T1"].count; ++i)
        for (int x = 0; x < g.M(); ++x) {
            EXPECT_EQ(t["T1"].at(i, x), 0.0);
            EXPECT_DOUBLE_EQ(t["T2"].at(i, x), -3.0);
            EXPECT_DOUBLE_EQ(t["T21"].at(i, x), -0.5);
            EXPECT_NEAR(t["T12"].at(i, x), 0.0, 1e-12);
            EXPECT_NEAR(remainder_r21(t, kSS, i, x, (x + 3) % g.M()), -0.5, 1e-12);
            EXPECT_NEAR(remainder_r1222(t, kSS, i, x, t["T1"].count - 1, 5), 0.0, 1e-12);
        }
}

TEST(Processes, AllLabelsAndDeterminism) {
    GridSpec g(4, 16);
    auto nf = sample_noise(g, 4);
    auto a = lift(nf, kPB, 10.0, 1.0), b = lift(nf, kPB, 10.0, 1.0);
    for (auto& l : kTreeLabels) {
        EXPECT_EQ(a[l].count, 17);
        EXPECT_EQ(a[l].values, b[l].values) << l;
    }
    EXPECT_THROW(a["T3"], std::out_of_range);
}

TEST(Processes, T1IsLinearInNoise) {
    GridSpec g(4, 24);
    auto n1 = sample_noise(g, 1), n2 = sample_noise(g, 2), n12 = n1;
    for (std::size_t i = 0; i < n12.values.size(); ++i) n12.values[i] += n2.values[i];
    auto a = lift(n1, kSS, 0, 0), b = lift(n2, kSS, 0, 0), c = lift(n12, kSS, 0, 0);
    for (std::size_t i = 0; i < a["T1"].values.size(); ++i)
        EXPECT_NEAR(c["T1"].values[i], a["T1"].values[i] + b["T1"].values[i], 1e-9);
}

// T1 against an independent evaluation: step the linear scheme v' = v + ε²(Δv + Dξ)
TEST(Processes, T1MatchesLinearScheme) {
    GridSpec g(5, 40);
    auto nf = sample_noise(g, 8);
    auto t = lift(nf, kPB, 0, 0);
    HeatKernel hk(kPB, g);
    Slice v(g.M(), 0.0);
    for (std::int64_t n = 0; n < g.steps; ++n) {
        auto d = derivative(kPB, nf.slice(n));
        v = hk.step(v);
        for (int x = 0; x < g.M(); ++x) v[x] += g.dt() * d[x];
    }
    for (int x = 0; x < g.M(); ++x) EXPECT_NEAR(t["T1"].at(t["T1"].count - 1, x), v[x], 1e-9);
}

TEST(Processes, PointwiseT11) {
    // B(1, h) = h for pointwise μ: T11 = D P ∗ T1, compare with a lift driven by T1 as "noise"
    GridSpec g(4, 20);
    auto nf = sample_noise(g, 3);
    auto t = lift(nf, kPB, 0, 0);
    NoiseField drive{g, 0, std::vector<double>(std::size_t(g.steps) * g.M())};
    for (std::int64_t n = 0; n < g.steps; ++n)
        for (int x = 0; x < g.M(); ++x) drive.values[n * g.M() + x] = t["T1"].at(n, x);
    auto u = lift(drive, kPB, 0, 0);
    for (std::size_t i = 0; i < t["T11"].values.size(); ++i) EXPECT_NEAR(t["T11"].values[i], u["T1"].values[i], 1e-9);
}

TEST(Processes, RemaindersPointwise) {
    GridSpec g(4, 16);
    auto t = lift(sample_noise(g, 5), kPB, 7.0, 0.3);
    const std::int64_t i = t["T1"].count - 1;
    for (int x : {0, 5, 15})
        EXPECT_NEAR(remainder_r21(t, kPB, i, x, x), t["T21"].at(i, x) - t["T11"].at(i, x) * t["T1"].at(i, x),
                    1e-9 * (1 + std::abs(t["T21"].at(i, x))));
    EXPECT_NEAR(remainder_r1222(t, kPB, i, 3, i, 3), t["T1222"].at(i, 3) - t["T122"].at(i, 3) * t.dpt1.at(i, 3),
                1e-9 * (1 + std::abs(t["T1222"].at(i, 3))));
}

TEST(Processes, ConstantsMustMatch) {
    GridSpec g(4, 8);
    auto nf = sample_noise(g, 1);
    EXPECT_THROW(lift(nf, kPB, compute_constants(kPB, GridSpec(5, 8))), std::invalid_argument);
    EXPECT_THROW(lift(nf, kPB, compute_constants(kSS, g)), std::invalid_argument);
    EXPECT_NO_THROW(lift(nf, kPB, compute_constants(kPB, GridSpec(4, 0))));
}

TEST(Processes, ChaosMeans) {
    // late-time means: T2 centred by the lattice constant, odd chaoses centred at 0
    GridSpec g = GridSpec::from_horizon(5, 0.25);
    auto rc = compute_constants(kPB, g);
    LiftOptions lo;
    lo.record_from = g.steps;
    std::vector<double> t1, t2, t122;
    for (int r = 0; r < 200; ++r) {
        auto t = lift(sample_noise(g, replica_seed(31, r)), kPB, rc, lo);
        t1.push_back(t["T1"].at(0, 0));
        t2.push_back(t["T2"].at(0, 0));
        t122.push_back(t["T122"].at(0, 0));
    }
    for (auto* v : {&t1, &t2, &t122}) {
        auto s = mc_summary(*v);
        EXPECT_LE(std::abs(s.mean), 3 * s.stderr_);
    }
}

TEST(Processes, SplitModeDiffersBySmootherField) {
    GridSpec g = GridSpec::from_horizon(7, 0.0625);
    auto nf = sample_noise(g, 12);
    LiftOptions full, split;
    split.mode = KernelMode::split_K;
    full.record_from = split.record_from = g.steps;
    auto a = lift(nf, kPB, 0, 0, full), b = lift(nf, kPB, 0, 0, split);
    Slice diff(g.M());
    for (int x = 0; x < g.M(); ++x) diff[x] = a["T1"].at(0, x) - b["T1"].at(0, x);
    auto tf = TestFunctionFamily::make(g.eps());
    const double e1 = estimate_exponent(a["T1"].slice(0), tf).exponent;
    const double ed = estimate_exponent(diff, tf).exponent;
    EXPECT_GE(ed - e1, 0.5);
}

TEST(Processes, SingularOrderProbe) {
    DiscreteKernel z(1.0 / 16, -1, 2, 3);
    EXPECT_EQ(singular_order_probe(z, -1.0), 0.0);
    DiscreteKernel d(1.0 / 16, -1, 2, 3);
    d.ref(0, 0) = 16.0;
    EXPECT_NEAR(order_norm(d, -1.0, 0), 1.0, 1e-12);
    EXPECT_GE(singular_order_probe(d, -1.0), 1.0);
}

TEST(Processes, McSummary) {
    auto s = mc_summary({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
    EXPECT_EQ(s.n, 4u);
}
