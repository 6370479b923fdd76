#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbe/measures.hpp"
#include "sbe/norms.hpp"
#include "sbe/processes.hpp"

namespace sbe {

inline const char* kLibraryVersion = "0.3.0";

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DriftMode { none, renormalized, custom };

inline const std::vector<std::string> kExperimentKinds = {"validate",   "constants",  "heat-kernel",
                                                          "simulate",   "processes",  "regularity",
                                                          "convergence", "kernel-diagnostics"};

struct ExperimentConfig {
    std::string kind;
    nlohmann::json family;
    std::vector<int> N;
    double T = 0.125;
    std::optional<std::uint64_t> seed;   // absent: taken from --seed, then SBE_SEED
    int replicas = 1;
    DriftMode drift = DriftMode::renormalized;
    double drift_value = 0.0;
    std::string output = "out";
    nlohmann::json params = nlohmann::json::object();   // kind-specific knobs

    bool operator==(const ExperimentConfig& o) const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig parse_config(const std::filesystem::path& path);

double resolve_drift(const ExperimentConfig& c, const OperatorFamily& fam, const GridSpec& grid);

struct ResultBundle {
    std::filesystem::path dir;
    nlohmann::json manifest;
    std::vector<std::filesystem::path> files;
    int exit_code = 0;
};

// writes data files and manifest.json under <out_root>/<kind>-<timestamp>
ResultBundle run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_root);

// config seed, else flag, else SBE_SEED, else 0
std::uint64_t resolve_seed(const ExperimentConfig& cfg, std::optional<std::uint64_t> flag);

// Studies shared by the CLI and the acceptance suite.

struct ConvergenceResult {
    std::vector<int> coarse_levels;                 // N of the coarse member of each pair
    std::vector<std::vector<double>> norms;         // [pair][replica]
    std::vector<double> medians;
    std::vector<std::vector<double>> per_time_median;   // [pair][coarse recorded time]
    std::vector<std::vector<double>> per_time_t;
    std::vector<double> horizon;   // per replica: T, or the truncated window when stopping at blow-up
    int blowups = 0;
};

struct ConvergenceSpec {
    std::vector<int> levels;   // consecutive, increasing
    double T = 0.125;
    int replicas = 50;
    std::uint64_t seed = 1;
    double alpha = -0.6, eta = -0.6;
    DriftMode drift = DriftMode::renormalized;
    double drift_value = 0.0;
    // compare on [0, τ) with τ the earliest blow-up over the levels instead of counting the replica as ∞
    bool stop_at_blowup = false;
};

ConvergenceResult convergence_study(const OperatorFamily& fam, const ConvergenceSpec& s);

struct RegularityResult {
    // label -> per-replica exponents; labels T1, T11, T12 (space), T2 (parabolic), noise (parabolic)
    std::map<std::string, std::vector<double>> exponents;
    std::map<std::string, HolderEstimate> first_fit;
};

RegularityResult regularity_study(const OperatorFamily& fam, int N, int replicas, std::uint64_t seed);

// per-replica X2(T, 0) with a = c2_lattice_sum
std::vector<double> chaos_mean_study(const OperatorFamily& fam, int N, double T, int replicas, std::uint64_t seed);

std::uint64_t replica_seed(std::uint64_t seed, int replica);

}  // namespace sbe
