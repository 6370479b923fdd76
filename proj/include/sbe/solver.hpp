#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sbe/grid.hpp"
#include "sbe/measures.hpp"

namespace sbe {

inline constexpr double kBlowupThreshold = 1e8;

struct SchemeConfig {
    OperatorFamily fam;
    GridSpec grid;
    double b_drift = 0.0;   // coefficient of D_x u
    std::int64_t record_stride = 1;

    std::uint64_t fingerprint() const;
};

// −4 c21 with c21 the torus mode sum
double default_drift(const OperatorFamily& fam, const GridSpec& grid);
SchemeConfig make_scheme(OperatorFamily fam, GridSpec grid);

struct StepResult {
    Slice u;
    bool blowup = false;
};

// u' = u + ε² (Δu + D B(u,u) + b D u + D ξ)
StepResult step_forward(const SchemeConfig& cfg, std::span<const double> u, std::span<const double> xi);

struct Trajectory {
    std::vector<std::int64_t> steps;
    std::vector<double> times;
    std::vector<Slice> snapshots;
    bool blowup = false;
    double blowup_time = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t config_fingerprint = 0;

    // snapshots as a strided field; requires a complete, evenly strided record
    LatticeField to_field(const GridSpec& g) const;
};

Trajectory run(const SchemeConfig& cfg, std::span<const double> u0, const NoiseField& noise, double T);
// Duhamel form evaluated spectrally with naive O(n²) time sums
Trajectory mild_oracle(const SchemeConfig& cfg, std::span<const double> u0, const NoiseField& noise, double T);

Slice ic_zero(const GridSpec& g);
Slice ic_constant(const GridSpec& g, double c);
// i.i.d. N(0, ε^{-1})
Slice ic_white_noise(const GridSpec& g, std::uint64_t seed);
// average of fine sites 2i, 2i+1
Slice coarsen_slice(std::span<const double> fine);

}  // namespace sbe
