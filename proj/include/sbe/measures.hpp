#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace sbe {

using cplx = std::complex<double>;

struct AtomicMeasure1D {
    std::map<int, double> atoms;
    int radius = 1;

    AtomicMeasure1D() = default;
    // throws std::invalid_argument if a weight is non-finite or all weights vanish
    explicit AtomicMeasure1D(std::map<int, double> a);

    double total_variation() const;   // ν̄ = Σ|w|
    double moment(int p) const;       // Σ j^p w
};

struct AtomicMeasure2D {
    std::map<std::pair<int, int>, double> atoms;
    int radius = 1;

    AtomicMeasure2D() = default;
    explicit AtomicMeasure2D(std::map<std::pair<int, int>, double> a);

    double mass() const;
};

struct Violation {
    std::string check;
    double measured = 0.0;
    double expected = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::map<std::string, double> info;

    void fail(std::string check, double measured, double expected);
};

ValidationReport validate_nu(const AtomicMeasure1D& m, int k_grid_size = 4096);
ValidationReport validate_pi(const AtomicMeasure1D& m);
ValidationReport validate_mu(const AtomicMeasure2D& m);

double fourier_nu(const AtomicMeasure1D& m, double k);
cplx fourier_pi(const AtomicMeasure1D& m, double k);
cplx fourier_mu(const AtomicMeasure2D& m, double k1, double k2);

inline constexpr double kTaylorThreshold = 1e-4;

// f(k) = -ν̂(k)/k^2, g(k) = π̂(k)/(ik); both continuous at 0
double f_of_k(const AtomicMeasure1D& nu, double k);
cplx g_of_k(const AtomicMeasure1D& pi, double k);

// Σ_s w_s cos(2π k s) / k^2 for a zero-mass atom list, Taylor branch near 0
double cos_sum_over_k2(const std::vector<std::pair<double, double>>& atoms, double k);

// presets: "laplacian-nn", "deriv-backward", "deriv-central"
AtomicMeasure1D preset_1d(const std::string& name);
// presets: "product-pointwise", "product-sasamoto-spohn"
AtomicMeasure2D preset_2d(const std::string& name);

nlohmann::json to_json(const AtomicMeasure1D& m);
nlohmann::json to_json(const AtomicMeasure2D& m);
AtomicMeasure1D measure1d_from_json(const nlohmann::json& j);
AtomicMeasure2D measure2d_from_json(const nlohmann::json& j);

struct OperatorFamily {
    AtomicMeasure1D nu;
    AtomicMeasure1D pi;
    AtomicMeasure2D mu;
    double nu_bar = 0.0;

    OperatorFamily() = default;
    // validates; throws std::invalid_argument with the failed checks
    OperatorFamily(AtomicMeasure1D nu_, AtomicMeasure1D pi_, AtomicMeasure2D mu_);

    int max_radius() const;
    std::uint64_t fingerprint() const;
};

// "sasamoto-spohn", "pointwise-backward", "pointwise-central"
OperatorFamily family_preset(const std::string& name);
// string preset or {"nu":..., "pi":..., "mu":...}, each a preset name or {"atoms": ...}
OperatorFamily family_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OperatorFamily& f);

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ULL);

}  // namespace sbe
