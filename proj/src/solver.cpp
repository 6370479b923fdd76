#include "sbe/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "sbe/fourier.hpp"
#include "sbe/operators.hpp"
#include "sbe/renorm.hpp"

namespace sbe {

std::uint64_t SchemeConfig::fingerprint() const {
    std::uint64_t h = fam.fingerprint();
    h = fnv1a(&grid.N, sizeof grid.N, h);
    h = fnv1a(&b_drift, sizeof b_drift, h);
    return fnv1a(&record_stride, sizeof record_stride, h);
}

double default_drift(const OperatorFamily& fam, const GridSpec& grid) { return -4.0 * c21_modesum(fam, grid); }

SchemeConfig make_scheme(OperatorFamily fam, GridSpec grid) {
    double b = default_drift(fam, grid);
    return {std::move(fam), grid, b, 1};
}

StepResult step_forward(const SchemeConfig& cfg, std::span<const double> u, std::span<const double> xi) {
    const int M = cfg.grid.M();
    if (int(u.size()) != M || int(xi.size()) != M) throw std::invalid_argument("slice shape does not match the grid");
    if (!std::isfinite(cfg.b_drift)) throw std::invalid_argument("drift coefficient is not finite");
    auto lap = laplacian(cfg.fam, u);
    auto g = twisted_product(cfg.fam, u, u);
    for (int i = 0; i < M; ++i) g[i] += cfg.b_drift * u[i] + xi[i];
    auto dg = derivative(cfg.fam, g);
    const double dt = cfg.grid.dt();
    StepResult r{Slice(M), false};
    for (int i = 0; i < M; ++i) {
        r.u[i] = u[i] + dt * (lap[i] + dg[i]);
        if (!(std::abs(r.u[i]) <= kBlowupThreshold)) r.blowup = true;
    }
    return r;
}

LatticeField Trajectory::to_field(const GridSpec& g) const {
    if (snapshots.empty()) throw std::invalid_argument("empty trajectory");
    const std::int64_t stride = steps.size() > 1 ? steps[1] - steps[0] : 1;
    LatticeField f(g, steps.front(), stride, std::int64_t(snapshots.size()));
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        if (steps[i] != steps.front() + std::int64_t(i) * stride)
            throw std::invalid_argument("trajectory is not evenly strided");
        std::copy(snapshots[i].begin(), snapshots[i].end(), f.slice(std::int64_t(i)).begin());
    }
    return f;
}

namespace {

std::int64_t horizon_steps(const SchemeConfig& cfg, const NoiseField& noise, double T) {
    if (!(noise.grid.N == cfg.grid.N)) throw std::invalid_argument("noise grid does not match the scheme grid");
    std::int64_t n = GridSpec::from_horizon(cfg.grid.N, T).steps;
    if (n > noise.grid.steps) throw std::invalid_argument("horizon exceeds the noise horizon");
    if (cfg.record_stride < 1) throw std::invalid_argument("record stride must be >= 1");
    return n;
}

void record(Trajectory& tr, const SchemeConfig& cfg, std::int64_t n, const Slice& u) {
    tr.steps.push_back(n);
    tr.times.push_back(n * cfg.grid.dt());
    tr.snapshots.push_back(u);
}

}  // namespace

Trajectory run(const SchemeConfig& cfg, std::span<const double> u0, const NoiseField& noise, double T) {
    const std::int64_t nT = horizon_steps(cfg, noise, T);
    Trajectory tr;
    tr.seed = noise.seed;
    tr.config_fingerprint = cfg.fingerprint();
    Slice u(u0.begin(), u0.end());
    if (int(u.size()) != cfg.grid.M()) throw std::invalid_argument("initial condition has the wrong length");
    record(tr, cfg, 0, u);
    for (std::int64_t n = 0; n < nT; ++n) {
        auto r = step_forward(cfg, u, noise.slice(n));
        if (r.blowup) {
            tr.blowup = true;
            tr.blowup_time = (n + 1) * cfg.grid.dt();
            break;
        }
        u = std::move(r.u);
        if ((n + 1) % cfg.record_stride == 0) record(tr, cfg, n + 1, u);
    }
    return tr;
}

Trajectory mild_oracle(const SchemeConfig& cfg, std::span<const double> u0, const NoiseField& noise, double T) {
    const std::int64_t nT = horizon_steps(cfg, noise, T);
    const int M = cfg.grid.M();
    const double eps = cfg.grid.eps(), dt = cfg.grid.dt();
    check_support(cfg.fam, M);
    std::vector<double> m(M);
    std::vector<cplx> d(M);
    for (int i = 0; i < M; ++i) {
        m[i] = 1.0 + laplacian_symbol(cfg.fam, eps, mode_of(i, M)) * dt;
        d[i] = derivative_symbol(cfg.fam, eps, mode_of(i, M));
    }
    Trajectory tr;
    tr.seed = noise.seed;
    tr.config_fingerprint = cfg.fingerprint();
    const Spectrum U0 = dft(u0);
    std::vector<Spectrum> G;   // spectra of B(u,u) + b u + ξ at past steps
    Slice u(u0.begin(), u0.end());
    record(tr, cfg, 0, u);
    for (std::int64_t n = 1; n <= nT; ++n) {
        {
            auto g = twisted_product(cfg.fam, u, u);
            auto xi = noise.slice(n - 1);
            for (int i = 0; i < M; ++i) g[i] += cfg.b_drift * u[i] + xi[i];
            G.push_back(dft(g));
        }
        Spectrum U(M);
        for (int i = 0; i < M; ++i) {
            cplx acc = 0.0;
            double p = 1.0;   // m^{n−1−s} for s from n−1 down to 0
            for (std::int64_t s = n - 1; s >= 0; --s) {
                acc += p * G[s][i];
                p *= m[i];
            }
            U[i] = std::pow(m[i], double(n)) * U0[i] + dt * d[i] * acc;
        }
        u = idft(U);
        bool blow = false;
        for (double v : u) blow = blow || !(std::abs(v) <= kBlowupThreshold);
        if (blow) {
            tr.blowup = true;
            tr.blowup_time = n * dt;
            break;
        }
        if (n % cfg.record_stride == 0) record(tr, cfg, n, u);
    }
    return tr;
}

Slice ic_zero(const GridSpec& g) { return Slice(g.M(), 0.0); }
Slice ic_constant(const GridSpec& g, double c) { return Slice(g.M(), c); }

Slice ic_white_noise(const GridSpec& g, std::uint64_t seed) {
    Slice u(g.M());
    const double sd = std::pow(g.eps(), -0.5);
    // tag keeps these draws apart from the space-time noise stream
    const std::uint64_t tag = 0x1c0000000ULL + std::uint64_t(g.N);
    for (int x = 0; x < g.M(); ++x) u[x] = sd * standard_normal(seed, tag, 0, std::uint64_t(x));
    return u;
}

Slice coarsen_slice(std::span<const double> fine) {
    Slice c(fine.size() / 2);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
    return c;
}

}  // namespace sbe
