#include "sbe/heat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbe {

double parabolic_norm(double t, double x) {
    double d = x - std::floor(x);
    d = std::min(d, 1.0 - d);
    return std::max(std::sqrt(std::abs(t)), d);
}

double smooth_parabolic_norm(double t, double x) {
    double d = x - std::floor(x);
    d = std::min(d, 1.0 - d);
    return std::pow(t * t + d * d * d * d, 0.25);
}

double time_weight(double t, double eps) { return std::max(std::min(std::sqrt(std::max(t, 0.0)), 1.0), eps); }

double cutoff_chi(double r, double inner, double outer) {
    if (r <= inner) return 1.0;
    if (r >= outer) return 0.0;
    auto phi = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
    double u = (outer - r) / (outer - inner);
    return phi(u) / (phi(u) + phi(1.0 - u));
}

HeatKernel::HeatKernel(OperatorFamily fam, GridSpec grid)
    : fam_(std::move(fam)), grid_(grid), m_(grid.M()), zero_(grid.M(), 0.0) {
    check_support(fam_, grid_.M());
    const int M = grid_.M();
    for (int i = 0; i < M; ++i) m_[i] = 1.0 + fourier_nu(fam_.nu, grid_.eps() * mode_of(i, M)) / (2.0 * fam_.nu_bar);
}

const Slice& HeatKernel::kernel_column(std::int64_t n) const {
    if (n < 0) return zero_;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    const int M = grid_.M();
    Spectrum s(M);
    for (int i = 0; i < M; ++i) s[i] = std::pow(m_[i], double(n));
    return cache_.emplace(n, idft(s)).first->second;
}

Slice HeatKernel::step(std::span<const double> u, Backend b) const {
    auto lap = laplacian(fam_, u, b);
    const double dt = grid_.dt();
    Slice out(u.begin(), u.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += dt * lap[i];
    return out;
}

KernelSplit HeatKernel::split(std::int64_t horizon_steps) const {
    if (horizon_steps < 0 || horizon_steps > grid_.steps)
        throw std::invalid_argument("split horizon exceeds the grid horizon");
    KernelSplit ks;
    ks.grid = grid_;
    ks.n_times = horizon_steps + 1;
    const int M = grid_.M();
    ks.K.assign(std::size_t(ks.n_times) * M, 0.0);
    ks.K_hat.assign(std::size_t(ks.n_times) * M, 0.0);
    // P_n evolved by stepping; columns are not cached here to bound memory
    Slice p(M, 0.0);
    p[0] = double(M);
    for (std::int64_t n = 0; n < ks.n_times; ++n) {
        if (n > 0) p = step(p);
        const double t = n * grid_.dt();
        for (int x = 0; x < M; ++x) {
            double chi = cutoff_chi(smooth_parabolic_norm(t, x * grid_.eps()), ks.cutoff_inner, ks.cutoff_outer);
            double k = chi * p[x];
            ks.K[n * M + x] = k;
            ks.K_hat[n * M + x] = p[x] - k;
        }
    }
    return ks;
}

BoundsDiagnostic HeatKernel::verify_bounds(int j, std::int64_t horizon_steps) const {
    if (j < 0 || j > 2) throw std::invalid_argument("verify_bounds supports j in {0, 1, 2}");
    BoundsDiagnostic d;
    d.j = j;
    const int M = grid_.M();
    const double eps = grid_.eps();
    Slice p(M, 0.0);
    p[0] = double(M);
    for (std::int64_t n = 0; n <= horizon_steps; ++n) {
        if (n > 0) p = step(p);
        const double t = n * grid_.dt();
        if (std::sqrt(t) > 0.375) break;
        Slice q = p;
        for (int r = 0; r < j; ++r) q = derivative(fam_, q);
        const double w = std::pow(time_weight(t, eps), 1 + j);
        double best = 0.0;
        for (int x = 0; x < M; ++x) {
            if (parabolic_norm(t, x * eps) > 0.375) continue;
            double v = std::abs(q[x]) * w;
            if (v > best) best = v;
            if (v > d.sup) {
                d.sup = v;
                d.argmax_step = n;
                d.argmax_site = x;
            }
        }
        d.per_time.push_back(best);
    }
    return d;
}

}  // namespace sbe
