#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sbe {

using Slice = std::vector<double>;

struct GridSpec {
    int N = 0;
    std::int64_t steps = 0;   // T / dt

    GridSpec() = default;
    GridSpec(int N_, std::int64_t steps_);
    // throws if T is not a multiple of dt (up to 1e-9 relative)
    static GridSpec from_horizon(int N, double T);

    int M() const { return 1 << N; }
    double eps() const { return 1.0 / M(); }
    double dt() const { return eps() * eps(); }
    double T() const { return steps * dt(); }
    bool operator==(const GridSpec&) const = default;
};

// Time slices (t0 + i*stride) * dt for i < count, stored time-major.
struct LatticeField {
    GridSpec grid;
    std::int64_t t0 = 0;
    std::int64_t stride = 1;
    std::int64_t count = 0;
    std::vector<double> values;

    LatticeField() = default;
    LatticeField(GridSpec g, std::int64_t t0_, std::int64_t stride_, std::int64_t count_);
    // all time indices 0..steps
    static LatticeField full(GridSpec g);

    int M() const { return grid.M(); }
    std::span<double> slice(std::int64_t i) { return {values.data() + i * M(), std::size_t(M())}; }
    std::span<const double> slice(std::int64_t i) const { return {values.data() + i * M(), std::size_t(M())}; }
    std::int64_t step_of(std::int64_t i) const { return t0 + i * stride; }
    double time_of(std::int64_t i) const { return step_of(i) * grid.dt(); }
    // slice index for time step n, or -1 if not recorded
    std::int64_t index_of_step(std::int64_t n) const;
    double& at(std::int64_t i, int x) { return values[i * M() + x]; }
    double at(std::int64_t i, int x) const { return values[i * M() + x]; }
};

// values[n*M + x] drives the step n -> n+1, n < grid.steps
struct NoiseField {
    GridSpec grid;
    std::uint64_t seed = 0;
    std::vector<double> values;

    int M() const { return grid.M(); }
    std::span<const double> slice(std::int64_t n) const { return {values.data() + n * M(), std::size_t(M())}; }
    double at(std::int64_t n, int x) const { return values[n * M() + x]; }
};

double standard_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c);

NoiseField sample_noise(const GridSpec& grid, std::uint64_t seed);
NoiseField coarsen_noise(const NoiseField& fine);
NoiseField mollify_noise(const NoiseField& noise, int radius_cells_time, int radius_cells_space);

// 1D bump exp(-1/(1-r^2)) sampled at i/(radius+1), |i| <= radius, normalized to sum 1
std::vector<double> bump_taps(int radius);

int wrap(long long i, int M);

}  // namespace sbe
