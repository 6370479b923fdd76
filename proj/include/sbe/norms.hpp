#pragma once

#include <span>
#include <vector>

#include "sbe/grid.hpp"

namespace sbe {

// φ(y) = c (1−y²)^{r+1} on [−1, 1], c chosen so that ε Σ_{y∈εZ} φ(y) = 1
struct TestFunctionFamily {
    int r = 4;
    double eps = 0.0;
    double c = 1.0;
    std::vector<double> scales;   // ε 2^j ∩ [ε, 1]

    static TestFunctionFamily make(double eps, int r = 4);
    double profile(double y) const;
    // φ'' (two vanishing moments), same constant c
    double detail(double y) const;
};

enum class Profile { bump, detail };

// ⟨ζ, φ_x^λ⟩_ε for every site x of ζ's grid, φ periodized on the unit torus
std::vector<double> pair_all(std::span<const double> zeta, const TestFunctionFamily& tf, double lambda,
                             Profile p = Profile::bump);

enum class Distance { periodic, interval };

struct HolderOptions {
    Distance distance = Distance::periodic;
    int max_points = 256;   // base points per slice; stride = max(1, M / max_points)
};

double holder_norm_space(const LatticeField& f, double alpha, double eta, double T, HolderOptions o = {});
double holder_norm_parabolic(const LatticeField& f, double alpha, double eta, double T, HolderOptions o = {});

inline int default_stride(int M) { return std::max(1, M / 256); }

// sup_{x, λ} λ^{-α} |⟨ζ, φ_x^λ⟩_ε| over base points x on a stride (0 = default)
double besov_norm_negative(std::span<const double> slice, double alpha, const TestFunctionFamily& tf, int stride = 0);
// space-time version: sup over recorded t ∈ (0, T] weighted by |t|_ε^{−(η∧0)}
double besov_norm_negative(const LatticeField& f, double alpha, double eta, double T, const TestFunctionFamily& tf,
                           int stride = 0);
// parabolic pairing ε³ Σ ζ(s,y) λ^{-3} φ((s−t)/λ²) φ((y−x)/λ); the field is taken as 0 outside its recorded window
double besov_norm_negative_parabolic(const LatticeField& f, double alpha, const TestFunctionFamily& tf,
                                     int stride = 0, int time_stride = 0);

// sup over coarse recorded t ∈ (0, T], coarse base points and tf scales of
// |t|_ε^{−(η∧0)} λ^{−α} |⟨coarse, φ⟩_{ε_c} − ⟨fine, φ⟩_{ε_f}|
double comparison_norm(const LatticeField& coarse, const LatticeField& fine, double alpha, double eta, double T,
                       const TestFunctionFamily& tf, int stride = 0);

enum class ExponentMode { space, parabolic };

struct HolderEstimate {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
    std::vector<double> scales;
    std::vector<double> sup_pairing;
};

struct ExponentOptions {
    int base_points = 16;
    int base_times = 4;
    int min_cells = 4;          // smallest scale = min_cells · ε
    double max_scale = 0.125;
};

// log-log slope of sup |⟨ζ, ψ_z^λ⟩| against λ with ψ the detail profile
HolderEstimate estimate_exponent(std::span<const double> slice, const TestFunctionFamily& tf,
                                 ExponentOptions o = {});
// space mode uses the last recorded slice; parabolic mode the whole recorded window
HolderEstimate estimate_exponent(const LatticeField& f, const TestFunctionFamily& tf, ExponentMode mode,
                                 ExponentOptions o = {});

HolderEstimate fit_loglog(std::vector<double> scales, std::vector<double> values);

}  // namespace sbe
