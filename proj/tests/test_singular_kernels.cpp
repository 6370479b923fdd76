#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sbe/singular_kernels.hpp"

using namespace sbe;

namespace {
DiscreteKernel power_kernel(double eps, int n_max, int R, double p) {
    DiscreteKernel k(eps, 0, n_max, R);
    for (int n = 0; n <= n_max; ++n)
        for (int x = -R; x <= R; ++x) k.ref(n, x) = std::pow(scaled_norm(n * eps * eps, x * eps, eps), p);
    return k;
}
DiscreteKernel split_kernel(int N) {
    HeatKernel hk(family_preset("pointwise-backward"), GridSpec::from_horizon(N, 0.25));
    return from_split(hk.split(hk.grid().steps));
}
}  // namespace

TEST(OrderNorm, Basics) {
    DiscreteKernel z(1.0 / 16, 0, 4, 4);
    EXPECT_EQ(order_norm(z, -1.0, 2), 0.0);
    auto k = power_kernel(1.0 / 16, 64, 8, -1.0);
    EXPECT_NEAR(order_norm(k, -1.0, 0), 1.0, 1e-12);
    DiscreteKernel k3 = k;
    for (double& v : k3.v) v *= -3.0;
    EXPECT_NEAR(order_norm(k3, -1.0, 2), 3.0 * order_norm(k, -1.0, 2), 1e-12);
    // support inside ‖z‖ ≤ 1: lowering ζ can only shrink the norm
    EXPECT_LE(order_norm(k, -2.0, 1), order_norm(k, -1.0, 1));
    EXPECT_LE(order_norm(k, -1.0, 1), order_norm(k, -0.5, 1));
    EXPECT_THROW(order_norm(k, -1.0, 3), std::invalid_argument);
}

TEST(OrderNorm, HeatKernelPartStable) {
    const double a = order_norm(split_kernel(5), -1.0, 2), b = order_norm(split_kernel(6), -1.0, 2);
    EXPECT_GT(a, 0.0);
    EXPECT_NEAR(b / a, 1.0, 0.5);
}

TEST(KernelAlgebra, ProductAndConvolution) {
    auto K = split_kernel(5);
    auto mu = preset_2d("product-pointwise");
    auto KK = twisted_kernel_product(K, K, mu);
    const double o = order_norm(KK, -2.0, 0);
    EXPECT_TRUE(std::isfinite(o));
    EXPECT_GT(o, 0.0);
    DiscreteKernel zero(K.eps, K.n_min, K.n_max, K.R);
    EXPECT_EQ(order_norm(twisted_kernel_product(K, zero, mu), -2.0, 0), 0.0);
    // mass is multiplicative under convolution
    auto a = power_kernel(1.0 / 16, 6, 3, 0.5), b = power_kernel(1.0 / 16, 4, 2, 1.0);
    EXPECT_NEAR(convolve_kernels(a, b).mass(), a.mass() * b.mass(), 1e-15);
}

TEST(Renormalized, ConstantAndDomain) {
    const double eps = 1.0 / 16;
    DiscreteKernel k1(eps, 0, 1, 1);
    for (double& v : k1.v) v = 1.0;
    DiscreteKernel c(eps, -10, 10, 10);
    for (double& v : c.v) v = 2.0;
    auto rc = renormalized_convolve(k1, -3.5, c, -1.0);
    for (int n = -8; n <= 10; ++n)
        for (int x = -9; x <= 9; ++x) EXPECT_EQ(rc.kernel.at(n, x), 0.0);
    EXPECT_DOUBLE_EQ(rc.order, -1.5);
    EXPECT_FALSE(rc.on_boundary);
    EXPECT_TRUE(renormalized_convolve(k1, -3.0, c, -1.0).on_boundary);
    EXPECT_THROW(renormalized_convolve(k1, -4.0, c, -1.0), std::domain_error);
    EXPECT_THROW(renormalized_convolve(k1, -3.5, c, 0.5), std::domain_error);
    EXPECT_THROW(renormalized_convolve(k1, -3.5, c, -2.6), std::domain_error);
}

TEST(Renormalized, IsConvolutionMinusMassTimesKernel) {
    auto K = split_kernel(5);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-1, 1);
    DiscreteKernel k1(K.eps, 0, 3, 3);
    for (double& v : k1.v) v = U(rng);
    auto rc = renormalized_convolve(k1, -3.5, K, -1.0);
    auto conv = convolve_kernels(k1, K);
    const double m = k1.mass();
    for (int n = rc.kernel.n_min; n <= rc.kernel.n_max; n += 7)
        for (int x = -rc.kernel.R; x <= rc.kernel.R; ++x)
            EXPECT_NEAR(rc.kernel.at(n, x), conv.at(n, x) - m * K.at(n, x), 1e-10);
}

TEST(Probes, IncrementAndMollification) {
    auto K = split_kernel(5);
    const double inc = increment_bound_probe(K, -1.0, 0.0);
    EXPECT_GT(inc, 0.0);
    EXPECT_LE(inc, 2.0);
    EXPECT_LE(increment_bound_probe(K, -1.0, 0.5), 10.0);
    const double loss = mollification_loss_probe(K, -1.0, 0.5, 2);
    EXPECT_TRUE(std::isfinite(loss));
    EXPECT_LT(loss, 10.0);
    EXPECT_THROW(increment_bound_probe(K, -1.0, 1.5), std::invalid_argument);
    EXPECT_THROW(mollification_loss_probe(K, -1.0, 0.5, 0), std::invalid_argument);
}
