#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "sbe/grid.hpp"
#include "sbe/measures.hpp"
#include "sbe/operators.hpp"

namespace sbe {

// parabolic norm of (t, x) with x measured by periodic distance
double parabolic_norm(double t, double x);
// (t² + x⁴)^{1/4}: equivalent to the above (ratio in [1, 2^{1/4}]) but smooth off the origin; the cutoff uses it
double smooth_parabolic_norm(double t, double x);
// |t|_ε = (sqrt(t) ∧ 1) ∨ ε
double time_weight(double t, double eps);

struct KernelSplit {
    GridSpec grid;
    std::int64_t n_times = 0;   // rows 0..n_times-1 hold t = n ε²
    double cutoff_inner = 0.25;
    double cutoff_outer = 0.5;
    std::vector<double> K;      // n_times × M
    std::vector<double> K_hat;

    std::span<const double> K_row(std::int64_t n) const { return {K.data() + n * grid.M(), std::size_t(grid.M())}; }
    std::span<const double> K_hat_row(std::int64_t n) const {
        return {K_hat.data() + n * grid.M(), std::size_t(grid.M())};
    }
};

// 1 on [0, inner], 0 on [outer, ∞), smooth in between; the split applies it to smooth_parabolic_norm
double cutoff_chi(double r, double inner = 0.25, double outer = 0.5);

struct BoundsDiagnostic {
    int j = 0;
    double sup = 0.0;
    std::int64_t argmax_step = 0;
    int argmax_site = 0;
    std::vector<double> per_time;   // max over sampled x at each step
};

class HeatKernel {
public:
    HeatKernel(OperatorFamily fam, GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    const OperatorFamily& family() const { return fam_; }
    // m(k) = 1 + ν̂(εk)/(2ν̄), indexed like a spectrum
    const std::vector<double>& multiplier() const { return m_; }

    // P_t for t = n ε²; zero for n < 0. Cached; the reference stays valid for the kernel's lifetime.
    const Slice& kernel_column(std::int64_t n) const;
    Slice step(std::span<const double> u, Backend b = Backend::automatic) const;
    KernelSplit split(std::int64_t horizon_steps) const;
    BoundsDiagnostic verify_bounds(int j, std::int64_t horizon_steps) const;

private:
    OperatorFamily fam_;
    GridSpec grid_;
    std::vector<double> m_;
    Slice zero_;
    mutable std::mutex mu_;
    mutable std::map<std::int64_t, Slice> cache_;
};

}  // namespace sbe
