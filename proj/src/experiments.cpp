#include "sbe/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "sbe/field_io.hpp"
#include "sbe/heat_kernel.hpp"
#include "sbe/renorm.hpp"
#include "sbe/singular_kernels.hpp"
#include "sbe/solver.hpp"

namespace sbe {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

std::string drift_name(DriftMode d) {
    switch (d) {
        case DriftMode::none: return "none";
        case DriftMode::renormalized: return "renormalized";
        default: return "custom";
    }
}

template <class T>
T field_as(const json& j, const char* name) {
    try {
        return j.at(name).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field '") + name + "': " + e.what());
    }
}

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& o) const { return to_json(*this) == to_json(o); }

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::vector<std::string> known = {"kind", "family", "N", "N_range", "T", "seed",
                                                   "replicas", "drift", "output", "params"};
    for (auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw ConfigError("unknown config field '" + k + "'");
    ExperimentConfig c;
    if (!j.contains("kind")) throw ConfigError("config is missing required field 'kind'");
    c.kind = field_as<std::string>(j, "kind");
    if (std::find(kExperimentKinds.begin(), kExperimentKinds.end(), c.kind) == kExperimentKinds.end()) {
        std::string all;
        for (auto& k : kExperimentKinds) all += (all.empty() ? "" : ", ") + k;
        throw ConfigError("config field 'kind': unknown experiment kind '" + c.kind + "' (expected one of " + all + ")");
    }
    if (!j.contains("family")) throw ConfigError("config is missing required field 'family'");
    c.family = j["family"];
    if (!c.family.is_string() && !c.family.is_object())
        throw ConfigError("config field 'family': expected a preset name or an object with nu, pi, mu");
    if (j.contains("N") && j.contains("N_range")) throw ConfigError("config fields 'N' and 'N_range' are exclusive");
    if (j.contains("N")) {
        if (j["N"].is_array())
            c.N = field_as<std::vector<int>>(j, "N");
        else
            c.N = {field_as<int>(j, "N")};
    } else if (j.contains("N_range")) {
        auto r = field_as<std::vector<int>>(j, "N_range");
        if (r.size() != 2 || r[0] > r[1]) throw ConfigError("config field 'N_range': expected [lo, hi] with lo <= hi");
        for (int n = r[0]; n <= r[1]; ++n) c.N.push_back(n);
    } else {
        throw ConfigError("config is missing required field 'N' (or 'N_range')");
    }
    if (c.N.empty()) throw ConfigError("config field 'N': empty list");
    for (int n : c.N)
        if (n < 2 || n > 10) throw ConfigError("config field 'N': " + std::to_string(n) + " outside the desk-scale range [2, 10]");
    if (j.contains("T")) c.T = field_as<double>(j, "T");
    if (!(c.T >= 0.0)) throw ConfigError("config field 'T': must be >= 0");
    if (j.contains("seed")) c.seed = field_as<std::uint64_t>(j, "seed");
    if (j.contains("replicas")) c.replicas = field_as<int>(j, "replicas");
    if (c.replicas < 1) throw ConfigError("config field 'replicas': must be >= 1");
    if (j.contains("drift")) {
        const auto& d = j["drift"];
        if (d.is_number()) {
            c.drift = DriftMode::custom;
            c.drift_value = d.get<double>();
        } else if (d.is_string() && d.get<std::string>() == "none") {
            c.drift = DriftMode::none;
        } else if (d.is_string() && d.get<std::string>() == "renormalized") {
            c.drift = DriftMode::renormalized;
        } else if (d.is_object() && d.contains("custom") && d["custom"].is_number()) {
            c.drift = DriftMode::custom;
            c.drift_value = d["custom"].get<double>();
        } else {
            throw ConfigError("config field 'drift': expected \"none\", \"renormalized\" or {\"custom\": value}");
        }
    }
    if (j.contains("output")) c.output = field_as<std::string>(j, "output");
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw ConfigError("config field 'params': expected an object");
        c.params = j["params"];
    }
    return c;
}

json to_json(const ExperimentConfig& c) {
    json j = {{"kind", c.kind},   {"family", c.family},     {"N", c.N},          {"T", c.T},
              {"replicas", c.replicas}, {"output", c.output}, {"params", c.params}};
    if (c.seed) j["seed"] = *c.seed;
    if (c.drift == DriftMode::custom)
        j["drift"] = {{"custom", c.drift_value}};
    else
        j["drift"] = drift_name(c.drift);
    return j;
}

ExperimentConfig parse_config(const fs::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        std::ifstream again(path);
        std::string text((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
        std::size_t line = 1 + std::count(text.begin(), text.begin() + std::min(text.size(), e.byte), '\n');
        throw ConfigError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
    return config_from_json(j);
}

std::uint64_t resolve_seed(const ExperimentConfig& cfg, std::optional<std::uint64_t> flag) {
    if (cfg.seed) return *cfg.seed;
    if (flag) return *flag;
    if (const char* env = std::getenv("SBE_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (!end || *end != '\0' || end == env) throw ConfigError("SBE_SEED is not an integer");
        return v;
    }
    return 0;
}

double resolve_drift(const ExperimentConfig& c, const OperatorFamily& fam, const GridSpec& grid) {
    switch (c.drift) {
        case DriftMode::none: return 0.0;
        case DriftMode::renormalized: return default_drift(fam, grid);
        default: return c.drift_value;
    }
}

std::uint64_t replica_seed(std::uint64_t seed, int replica) {
    std::uint64_t v[2] = {seed, std::uint64_t(replica)};
    return fnv1a(v, sizeof v);
}

// ---------------------------------------------------------------- studies

namespace {

double drift_for(DriftMode d, double value, const OperatorFamily& fam, const GridSpec& g) {
    if (d == DriftMode::none) return 0.0;
    if (d == DriftMode::renormalized) return default_drift(fam, g);
    return value;
}

double median(std::vector<double> v) {
    if (v.empty()) return NAN;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ConvergenceResult convergence_study(const OperatorFamily& fam, const ConvergenceSpec& s) {
    if (s.levels.size() < 2) throw std::invalid_argument("convergence study needs at least two levels");
    for (std::size_t i = 1; i < s.levels.size(); ++i)
        if (s.levels[i] != s.levels[i - 1] + 1) throw std::invalid_argument("convergence levels must be consecutive");
    const std::size_t L = s.levels.size();
    std::vector<GridSpec> grids;
    std::vector<double> drift;
    for (int N : s.levels) {
        grids.push_back(GridSpec::from_horizon(N, s.T));
        drift.push_back(drift_for(s.drift, s.drift_value, fam, grids.back()));
    }
    const int n_probe = 16;

    ConvergenceResult res;
    res.coarse_levels.assign(s.levels.begin(), s.levels.end() - 1);
    res.norms.assign(L - 1, std::vector<double>(s.replicas, NAN));
    std::vector<std::vector<std::vector<double>>> per_time(L - 1);
    std::vector<int> blow(s.replicas, 0);
    res.horizon.assign(s.replicas, s.T);

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < s.replicas; ++r) {
        const std::uint64_t seed = replica_seed(s.seed, r);
        std::vector<NoiseField> noise(L);
        std::vector<Slice> u0(L);
        noise[L - 1] = sample_noise(grids[L - 1], seed);
        u0[L - 1] = ic_white_noise(grids[L - 1], seed);
        for (std::size_t i = L - 1; i > 0; --i) {
            noise[i - 1] = coarsen_noise(noise[i]);
            u0[i - 1] = coarsen_slice(u0[i]);
        }
        std::vector<LatticeField> u(L);
        double tau = s.T;
        bool blown = false;
        for (std::size_t i = 0; i < L; ++i) {
            SchemeConfig cfg{fam, grids[i], drift[i], 1};
            auto tr = run(cfg, u0[i], noise[i], s.T);
            if (tr.blowup) {
                blown = true;
                tau = std::min(tau, tr.blowup_time);
                if (!s.stop_at_blowup) break;
            }
            u[i] = tr.to_field(grids[i]);
        }
        if (blown) blow[r] = 1;
        // last coarse time strictly before every level's blow-up
        const double dtc = grids[0].dt();
        const double window = blown ? (std::ceil(tau / dtc - 1e-9) - 1.0) * dtc : s.T;
        res.horizon[r] = window;
        if (blown && (!s.stop_at_blowup || window < 4 * dtc)) {
            for (std::size_t p = 0; p + 1 < L; ++p) res.norms[p][r] = INFINITY;
            continue;
        }
        for (std::size_t p = 0; p + 1 < L; ++p) {
            const auto tf = TestFunctionFamily::make(grids[p].eps());
            res.norms[p][r] = comparison_norm(u[p], u[p + 1], s.alpha, s.eta, window + 0.5 * dtc, tf);
        }
    }
    for (int b : blow) res.blowups += b;
    for (std::size_t p = 0; p + 1 < L; ++p) res.medians.push_back(median(res.norms[p]));

    // per-time medians on a few coarse times, replicas regenerated deterministically
    res.per_time_median.assign(L - 1, {});
    res.per_time_t.assign(L - 1, {});
    for (std::size_t p = 0; p + 1 < L; ++p) {
        const std::int64_t steps = grids[p].steps;
        std::vector<std::int64_t> probe;
        for (int k = 1; k <= n_probe; ++k) probe.push_back(std::max<std::int64_t>(1, steps * k / n_probe));
        probe.erase(std::unique(probe.begin(), probe.end()), probe.end());
        std::vector<std::vector<double>> vals(probe.size(), std::vector<double>(s.replicas, INFINITY));
        const int reps = std::min(s.replicas, 10);
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < reps; ++r) {
            const std::uint64_t seed = replica_seed(s.seed, r);
            NoiseField nf = sample_noise(grids[L - 1], seed);
            Slice uf = ic_white_noise(grids[L - 1], seed);
            for (std::size_t i = L - 1; i > p + 1; --i) {
                nf = coarsen_noise(nf);
                uf = coarsen_slice(uf);
            }
            NoiseField nc = coarsen_noise(nf);
            Slice uc = coarsen_slice(uf);
            auto tc = run(SchemeConfig{fam, grids[p], drift[p], 1}, uc, nc, s.T);
            auto tfn = run(SchemeConfig{fam, grids[p + 1], drift[p + 1], 1}, uf, nf, s.T);
            if (tc.blowup || tfn.blowup) continue;
            auto fc = tc.to_field(grids[p]);
            auto ff = tfn.to_field(grids[p + 1]);
            const auto tf = TestFunctionFamily::make(grids[p].eps());
            for (std::size_t q = 0; q < probe.size(); ++q) {
                LatticeField one(grids[p], probe[q], 1, 1);
                std::copy(fc.slice(probe[q]).begin(), fc.slice(probe[q]).end(), one.slice(0).begin());
                vals[q][r] = comparison_norm(one, ff, s.alpha, s.eta, s.T, tf);
            }
        }
        for (std::size_t q = 0; q < probe.size(); ++q) {
            vals[q].resize(reps);
            res.per_time_median[p].push_back(median(vals[q]));
            res.per_time_t[p].push_back(probe[q] * grids[p].dt());
        }
    }
    return res;
}

RegularityResult regularity_study(const OperatorFamily& fam, int N, int replicas, std::uint64_t seed) {
    const double T = 0.25;
    const GridSpec g = GridSpec::from_horizon(N, T);
    const auto rc = compute_constants(fam, g);
    const auto tf = TestFunctionFamily::make(g.eps());
    ExponentOptions eo;
    // room for the parabolic base times, 2λmax² apart with λmax² margins
    const std::int64_t window = std::min<std::int64_t>(
        g.steps, std::int64_t(std::llround(2.0 * eo.base_times * eo.max_scale * eo.max_scale / g.dt())) + 1);
    LiftOptions lo;
    lo.record_from = g.steps - window;
    RegularityResult res;
    const std::vector<std::string> labels = {"T1", "T11", "T12", "T2", "noise"};
    for (auto& l : labels) res.exponents[l].assign(replicas, NAN);
    std::vector<std::map<std::string, HolderEstimate>> fits(replicas);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicas; ++r) {
        auto noise = sample_noise(g, replica_seed(seed, r));
        auto tps = lift(noise, fam, rc, lo);
        LatticeField nf(g, lo.record_from, 1, g.steps - lo.record_from);
        for (std::int64_t i = 0; i < nf.count; ++i) {
            auto src = noise.slice(lo.record_from + i);
            std::copy(src.begin(), src.end(), nf.slice(i).begin());
        }
        std::map<std::string, HolderEstimate> f;
        f["T1"] = estimate_exponent(tps["T1"], tf, ExponentMode::space, eo);
        f["T11"] = estimate_exponent(tps["T11"], tf, ExponentMode::space, eo);
        f["T12"] = estimate_exponent(tps["T12"], tf, ExponentMode::space, eo);
        f["T2"] = estimate_exponent(tps["T2"], tf, ExponentMode::parabolic, eo);
        f["noise"] = estimate_exponent(nf, tf, ExponentMode::parabolic, eo);
        for (auto& [l, h] : f) res.exponents[l][r] = h.exponent;
        fits[r] = std::move(f);
    }
    if (replicas > 0) res.first_fit = fits[0];
    return res;
}

std::vector<double> chaos_mean_study(const OperatorFamily& fam, int N, double T, int replicas, std::uint64_t seed) {
    const GridSpec g = GridSpec::from_horizon(N, T);
    const auto rc = compute_constants(fam, g);
    LiftOptions lo;
    lo.record_from = g.steps;
    std::vector<double> out(replicas);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < replicas; ++r) {
        auto tps = lift(sample_noise(g, replica_seed(seed, r)), fam, rc, lo);
        out[r] = tps["T2"].at(0, 0);
    }
    return out;
}

// ---------------------------------------------------------------- bundle

namespace {

struct Writer {
    fs::path dir;
    std::vector<fs::path> files;

    std::ofstream open(const std::string& name) {
        files.push_back(dir / name);
        std::ofstream os(dir / name);
        if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
        return os;
    }
    void add(const std::vector<fs::path>& ps) { files.insert(files.end(), ps.begin(), ps.end()); }
};

std::string family_label(const json& fam) { return fam.is_string() ? fam.get<std::string>() : std::string("custom"); }

json report_json(const ValidationReport& r) {
    json v = json::array();
    for (auto& x : r.violations) v.push_back({{"check", x.check}, {"measured", x.measured}, {"expected", x.expected}});
    return {{"ok", r.ok}, {"violations", v}, {"info", r.info}};
}

int kind_validate(const ExperimentConfig& c, Writer& w, json& results) {
    AtomicMeasure1D nu, pi;
    AtomicMeasure2D mu;
    if (c.family.is_string()) {
        auto f = family_preset(c.family.get<std::string>());
        nu = f.nu, pi = f.pi, mu = f.mu;
    } else {
        for (const char* k : {"nu", "pi", "mu"})
            if (!c.family.contains(k)) throw ConfigError(std::string("config field 'family': missing '") + k + "'");
        nu = measure1d_from_json(c.family["nu"]);
        pi = measure1d_from_json(c.family["pi"]);
        mu = measure2d_from_json(c.family["mu"]);
    }
    auto rn = validate_nu(nu), rp = validate_pi(pi), rm = validate_mu(mu);
    json warnings = json::array();
    double min_m = 1.0;
    if (rn.ok) {
        const double nb = nu.total_variation();
        for (int i = 0; i <= 4096; ++i) min_m = std::min(min_m, 1.0 + fourier_nu(nu, 0.5 * i / 4096.0) / (2.0 * nb));
        if (min_m < 0.55) warnings.push_back("min multiplier m(k) = " + fmt_double(min_m) + " < 0.55: scheme is close to oscillatory");
    }
    if (std::abs(rm.info["mass"] - 1.0) > 1e-12) warnings.push_back("mu has total mass " + fmt_double(rm.info["mass"]) + " (constants are not preserved)");
    const bool ok = rn.ok && rp.ok && rm.ok;
    json rep = {{"ok", ok},
                {"nu", report_json(rn)},
                {"pi", report_json(rp)},
                {"mu", report_json(rm)},
                {"min_multiplier", min_m},
                {"warnings", warnings}};
    w.open("validation.json") << rep.dump(2) << "\n";
    results = {{"ok", ok}, {"warnings", warnings.size()}};
    return ok ? 0 : 1;
}

int kind_constants(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    auto os = w.open("constants.csv");
    os << "N,family,c2_quadrature,c2_lattice,c21_quadrature,c21_modesum\n";
    const double q21 = c21_quadrature(fam);
    for (int N : c.N) {
        GridSpec g(N, 0);
        os << N << "," << csv_quote(family_label(c.family)) << "," << fmt_double(c2_quadrature(fam, g)) << ","
           << fmt_double(c2_lattice_sum(fam, g)) << "," << fmt_double(q21) << "," << fmt_double(c21_modesum(fam, g))
           << "\n";
    }
    results = {{"c21_quadrature", q21}};
    return 0;
}

int kind_heat_kernel(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    auto os = w.open("bounds.csv");
    os << "N,quantity,value\n";
    for (int N : c.N) {
        GridSpec g = GridSpec::from_horizon(N, c.T);
        HeatKernel hk(fam, g);
        LatticeField P = LatticeField::full(g);
        Slice p(g.M(), 0.0);
        p[0] = g.M();
        double mass_err = 0.0;
        for (std::int64_t n = 0; n <= g.steps; ++n) {
            if (n > 0) p = hk.step(p);
            std::copy(p.begin(), p.end(), P.slice(n).begin());
            double m = 0.0;
            for (double v : p) m += v;
            mass_err = std::max(mass_err, std::abs(m * g.eps() - 1.0));
        }
        w.add(write_field(w.dir / ("kernel_N" + std::to_string(N)), P, 0, {{"quantity", "P"}}));
        double min_m = 1.0;
        for (double m : hk.multiplier()) min_m = std::min(min_m, m);
        os << N << ",mass_error," << fmt_double(mass_err) << "\n";
        os << N << ",min_multiplier," << fmt_double(min_m) << "\n";
        for (int j = 0; j <= 2; ++j) os << N << ",bound_j" << j << "," << fmt_double(hk.verify_bounds(j, g.steps).sup) << "\n";
    }
    results = {{"levels", c.N.size()}};
    return 0;
}

Slice initial_condition(const ExperimentConfig& c, const GridSpec& g, std::uint64_t seed) {
    std::string ic = c.params.value("initial", "white-noise");
    if (ic == "zero") return ic_zero(g);
    if (ic == "constant") return ic_constant(g, c.params.value("initial_value", 0.0));
    if (ic == "white-noise") return ic_white_noise(g, seed);
    throw ConfigError("config field 'params.initial': expected zero, constant or white-noise");
}

int kind_simulate(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    const std::uint64_t seed = c.seed.value_or(0);
    GridSpec g = GridSpec::from_horizon(c.N.front(), c.T);
    SchemeConfig cfg{fam, g, resolve_drift(c, fam, g), c.params.value("record_stride", std::int64_t(1))};
    auto noise = sample_noise(g, seed);
    auto tr = run(cfg, initial_condition(c, g, seed), noise, c.T);
    LatticeField f(g, 0, cfg.record_stride, std::int64_t(tr.snapshots.size()));
    for (std::size_t i = 0; i < tr.snapshots.size(); ++i)
        std::copy(tr.snapshots[i].begin(), tr.snapshots[i].end(), f.slice(std::int64_t(i)).begin());
    w.add(write_field(w.dir / "u", f, seed, {{"quantity", "u"}}));
    json run = {{"family", c.family}, {"N", g.N},           {"T", c.T},
                {"seed", seed},       {"b_drift", cfg.b_drift}, {"blowup", tr.blowup}};
    if (tr.blowup) run["blowup_time"] = tr.blowup_time;
    w.open("run.json") << run.dump(2) << "\n";
    results = run;
    return tr.blowup ? 3 : 0;
}

int kind_processes(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    const std::uint64_t seed = c.seed.value_or(0);
    GridSpec g = GridSpec::from_horizon(c.N.front(), c.T);
    auto rc = compute_constants(fam, g);
    LiftOptions lo;
    lo.mode = c.params.value("mode", "full_P") == "split_K" ? KernelMode::split_K : KernelMode::full_P;
    lo.record_stride = std::max<std::int64_t>(1, c.params.value("record_stride", g.steps / 8));
    lo.record_from = g.steps % lo.record_stride;
    std::map<std::string, std::vector<std::vector<double>>> at0;   // label -> [slice][replica]
    std::vector<TreeProcessSet> first(1);
    for (int r = 0; r < c.replicas; ++r) {
        auto tps = lift(sample_noise(g, replica_seed(seed, r)), fam, rc, lo);
        for (auto& l : kTreeLabels) {
            auto& v = at0[l];
            v.resize(tps[l].count);
            for (std::int64_t i = 0; i < tps[l].count; ++i) v[i].push_back(tps[l].at(i, 0));
        }
        if (r == 0) first[0] = std::move(tps);
    }
    for (auto& l : kTreeLabels)
        w.add(write_field(w.dir / ("X_" + l), first[0][l], replica_seed(seed, 0),
                          {{"quantity", l}, {"a", rc.c2}, {"b", rc.c21}, {"mode", to_string(lo.mode)}}));
    auto os = w.open("mc_summary.csv");
    os << "label,t,mean,stderr,replicas\n";
    for (auto& l : kTreeLabels) {
        const auto& f = first[0][l];
        for (std::int64_t i = 0; i < f.count; ++i) {
            auto s = mc_summary(at0[l][i]);
            os << l << "," << fmt_double(f.time_of(i)) << "," << fmt_double(s.mean) << "," << fmt_double(s.stderr_)
               << "," << s.n << "\n";
        }
    }
    results = {{"a", rc.c2}, {"b", rc.c21}, {"mode", to_string(lo.mode)}};
    return 0;
}

int kind_regularity(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    const std::uint64_t seed = c.seed.value_or(0);
    auto res = regularity_study(fam, c.N.front(), c.replicas, seed);
    auto os = w.open("exponents.csv");
    os << "label,mode,exponent_mean,stderr,replicas\n";
    for (auto& [l, v] : res.exponents) {
        auto s = mc_summary(v);
        const bool par = l == "T2" || l == "noise";
        os << l << "," << (par ? "parabolic" : "space") << "," << fmt_double(s.mean) << "," << fmt_double(s.stderr_)
           << "," << s.n << "\n";
        results[l] = s.mean;
    }
    auto ps = w.open("pairings.csv");
    ps << "label,lambda,sup_pairing\n";
    for (auto& [l, h] : res.first_fit)
        for (std::size_t i = 0; i < h.scales.size(); ++i)
            ps << l << "," << fmt_double(h.scales[i]) << "," << fmt_double(h.sup_pairing[i]) << "\n";
    return 0;
}

int kind_convergence(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    ConvergenceSpec s;
    s.levels = c.N;
    s.T = c.T;
    s.replicas = c.replicas;
    s.seed = c.seed.value_or(0);
    s.alpha = c.params.value("alpha", -0.6);
    s.eta = c.params.value("eta", -0.6);
    s.drift = c.drift;
    s.drift_value = c.drift_value;
    s.stop_at_blowup = c.params.value("stop_at_blowup", false);
    auto res = convergence_study(fam, s);
    auto os = w.open("convergence.csv");
    os << "N_coarse,replica,horizon,norm\n";
    for (std::size_t p = 0; p < res.coarse_levels.size(); ++p)
        for (std::size_t r = 0; r < res.norms[p].size(); ++r)
            os << res.coarse_levels[p] << "," << r << "," << fmt_double(res.horizon[r]) << ","
               << fmt_double(res.norms[p][r]) << "\n";
    auto ms = w.open("summary.csv");
    ms << "N_coarse,median_norm\n";
    for (std::size_t p = 0; p < res.coarse_levels.size(); ++p)
        ms << res.coarse_levels[p] << "," << fmt_double(res.medians[p]) << "\n";
    auto pt = w.open("per_time.csv");
    pt << "N_coarse,t,median_norm\n";
    for (std::size_t p = 0; p < res.coarse_levels.size(); ++p)
        for (std::size_t q = 0; q < res.per_time_t[p].size(); ++q)
            pt << res.coarse_levels[p] << "," << fmt_double(res.per_time_t[p][q]) << ","
               << fmt_double(res.per_time_median[p][q]) << "\n";
    results = {{"medians", res.medians}, {"blowups", res.blowups}};
    return 0;
}

int kind_kernel_diagnostics(const ExperimentConfig& c, Writer& w, json& results, const OperatorFamily& fam) {
    auto os = w.open("kernel_diagnostics.csv");
    os << "N,quantity,value\n";
    for (int N : c.N) {
        GridSpec g = GridSpec::from_horizon(N, 0.25);
        HeatKernel hk(fam, g);
        auto K = from_split(hk.split(g.steps));
        os << N << ",order_norm_K_zeta-1_m2," << fmt_double(order_norm(K, -1.0, 2)) << "\n";
        os << N << ",increment_probe_kappa0.5," << fmt_double(increment_bound_probe(K, -1.0, 0.5)) << "\n";
        os << N << ",mollification_loss_4eps_kappa0.5," << fmt_double(mollification_loss_probe(K, -1.0, 0.5, 4)) << "\n";
        auto KK = twisted_kernel_product(K, K, fam.mu);
        os << N << ",order_norm_B(K,K)_zeta-2_m2," << fmt_double(order_norm(KK, -2.0, 2)) << "\n";
    }
    results = {{"levels", c.N.size()}};
    return 0;
}

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char b[32];
    std::strftime(b, sizeof b, "%Y%m%dT%H%M%SZ", &tm);
    return b;
}

}  // namespace

ResultBundle run_experiment(const ExperimentConfig& cfg, const fs::path& out_root) {
    const auto t_start = std::chrono::steady_clock::now();
    ResultBundle b;
    fs::path dir = out_root / (cfg.kind + "-" + timestamp());
    for (int k = 1; fs::exists(dir); ++k) dir = out_root / (cfg.kind + "-" + timestamp() + "-" + std::to_string(k));
    fs::create_directories(dir);
    Writer w{dir, {}};
    json results = json::object();
    int code = 0;
    if (cfg.kind == "validate") {
        code = kind_validate(cfg, w, results);
    } else {
        OperatorFamily fam;
        try {
            fam = family_from_json(cfg.family);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config field 'family': ") + e.what());
        }
        if (cfg.kind == "constants") code = kind_constants(cfg, w, results, fam);
        else if (cfg.kind == "heat-kernel") code = kind_heat_kernel(cfg, w, results, fam);
        else if (cfg.kind == "simulate") code = kind_simulate(cfg, w, results, fam);
        else if (cfg.kind == "processes") code = kind_processes(cfg, w, results, fam);
        else if (cfg.kind == "regularity") code = kind_regularity(cfg, w, results, fam);
        else if (cfg.kind == "convergence") code = kind_convergence(cfg, w, results, fam);
        else code = kind_kernel_diagnostics(cfg, w, results, fam);
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    json files = json::array();
    for (auto& f : w.files)
        files.push_back({{"name", f.filename().string()},
                         {"bytes", fs::file_size(f)},
                         {"checksum", "fnv1a64:" + hex64(file_checksum(f))}});
    b.manifest = {{"config", to_json(cfg)},
                  {"library_version", kLibraryVersion},
                  {"wall_time_s", wall},
                  {"exit_code", code},
                  {"files", files},
                  {"results", results}};
    std::ofstream(dir / "manifest.json") << b.manifest.dump(2) << "\n";
    b.dir = dir;
    b.files = w.files;
    b.exit_code = code;
    return b;
}

}  // namespace sbe
