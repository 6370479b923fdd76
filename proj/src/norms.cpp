#include "sbe/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbe/fourier.hpp"
#include "sbe/heat_kernel.hpp"

namespace sbe {

TestFunctionFamily TestFunctionFamily::make(double eps, int r) {
    if (r < 1) throw std::invalid_argument("test function smoothness must be >= 1");
    TestFunctionFamily tf;
    tf.r = r;
    tf.eps = eps;
    tf.c = 1.0;
    const int half = int(std::ceil(1.0 / eps));
    double mass = 0.0;
    for (int j = -half; j <= half; ++j) mass += eps * tf.profile(j * eps);
    tf.c = 1.0 / mass;
    for (double l = eps; l <= 1.0 + 1e-12; l *= 2.0) tf.scales.push_back(l);
    return tf;
}

double TestFunctionFamily::profile(double y) const {
    if (std::abs(y) >= 1.0) return 0.0;
    return c * std::pow(1.0 - y * y, r + 1);
}

double TestFunctionFamily::detail(double y) const {
    if (std::abs(y) >= 1.0) return 0.0;
    const double q = 1.0 - y * y;
    return -2.0 * c * (r + 1) * (std::pow(q, r) - 2.0 * r * y * y * std::pow(q, r - 1));
}

namespace {

Spectrum test_spectrum(int M, const TestFunctionFamily& tf, double lambda, Profile p) {
    std::vector<double> w(M, 0.0);
    const int reach = int(std::ceil(lambda)) + 1;
    for (int i = 0; i < M; ++i) {
        const double y = double(i) / M;
        double s = 0.0;
        for (int n = -reach; n <= reach; ++n) {
            double u = (y + n) / lambda;
            if (std::abs(u) < 1.0) s += p == Profile::bump ? tf.profile(u) : tf.detail(u);
        }
        w[i] = s / lambda;
    }
    return dft(w);
}

std::vector<double> correlate(const Spectrum& Z, const Spectrum& W) {
    Spectrum c(Z.size());
    for (std::size_t i = 0; i < Z.size(); ++i) c[i] = Z[i] * std::conj(W[i]);
    return idft(c);
}

void check_smoothness(const TestFunctionFamily& tf, double alpha) {
    if (tf.r <= std::abs(alpha))
        throw std::invalid_argument("test function smoothness r must exceed |alpha|");
}

int resolve_stride(int stride, int M) { return stride > 0 ? stride : default_stride(M); }

double weight_exp(double eta) { return -std::min(eta, 0.0); }

}  // namespace

std::vector<double> pair_all(std::span<const double> zeta, const TestFunctionFamily& tf, double lambda, Profile p) {
    const int M = int(zeta.size());
    return correlate(dft(zeta), test_spectrum(M, tf, lambda, p));
}

namespace {

double distance(int i, int j, int M, Distance d) {
    int a = std::abs(i - j);
    if (d == Distance::periodic) a = std::min(a, M - a);
    return double(a) / M;
}

std::vector<std::int64_t> times_in(const LatticeField& f, double T, int max_count) {
    std::vector<std::int64_t> idx;
    for (std::int64_t i = 0; i < f.count; ++i) {
        double t = f.time_of(i);
        if (t > 0.0 && t <= T + 1e-12) idx.push_back(i);
    }
    if (max_count > 0 && std::int64_t(idx.size()) > max_count) {
        std::vector<std::int64_t> sub;
        const double h = double(idx.size() - 1) / (max_count - 1);
        for (int k = 0; k < max_count; ++k) sub.push_back(idx[std::size_t(std::llround(k * h))]);
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
        idx = sub;
    }
    return idx;
}

}  // namespace

double holder_norm_space(const LatticeField& f, double alpha, double eta, double T, HolderOptions o) {
    const int M = f.M();
    const double eps = f.grid.eps();
    const int s = std::max(1, M / std::max(1, o.max_points));
    double sup0 = 0.0, sup1 = 0.0;
    for (auto i : times_in(f, T, 0)) {
        const double tw = time_weight(f.time_of(i), eps);
        auto z = f.slice(i);
        for (int x = 0; x < M; ++x) sup0 = std::max(sup0, std::pow(tw, weight_exp(eta)) * std::abs(z[x]));
        const double den_t = std::pow(tw, eta - alpha);
        for (int x = 0; x < M; x += s)
            for (int y = x + s; y < M; y += s) {
                double d = distance(x, y, M, o.distance);
                sup1 = std::max(sup1, std::abs(z[x] - z[y]) / (den_t * std::pow(d, alpha)));
            }
    }
    return sup0 + sup1;
}

double holder_norm_parabolic(const LatticeField& f, double alpha, double eta, double T, HolderOptions o) {
    const int M = f.M();
    const double eps = f.grid.eps();
    const int s = std::max(1, M / std::max(1, o.max_points));
    auto idx = times_in(f, T, o.max_points);
    double sup2 = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const double t = f.time_of(idx[a]), tb = f.time_of(idx[b]);
            const double tw = std::min(time_weight(t, eps), time_weight(tb, eps));
            const double dt = std::abs(tb - t);
            if (dt > tw * tw + 1e-15) continue;
            const double den = std::pow(tw, eta - alpha) * std::pow(dt, alpha / 2.0);
            for (int x = 0; x < M; x += s) sup2 = std::max(sup2, std::abs(f.at(idx[a], x) - f.at(idx[b], x)) / den);
        }
    return holder_norm_space(f, alpha, eta, T, o) + sup2;
}

double besov_norm_negative(std::span<const double> slice, double alpha, const TestFunctionFamily& tf, int stride) {
    check_smoothness(tf, alpha);
    const int M = int(slice.size());
    const int s = resolve_stride(stride, M);
    auto Z = dft(slice);
    double sup = 0.0;
    for (double l : tf.scales) {
        auto c = correlate(Z, test_spectrum(M, tf, l, Profile::bump));
        const double w = std::pow(l, -alpha);
        for (int x = 0; x < M; x += s) sup = std::max(sup, w * std::abs(c[x]));
    }
    return sup;
}

double besov_norm_negative(const LatticeField& f, double alpha, double eta, double T, const TestFunctionFamily& tf,
                           int stride) {
    check_smoothness(tf, alpha);
    double sup = 0.0;
    for (auto i : times_in(f, T, 0))
        sup = std::max(sup, std::pow(time_weight(f.time_of(i), f.grid.eps()), weight_exp(eta)) *
                                besov_norm_negative(f.slice(i), alpha, tf, stride));
    return sup;
}

namespace {

// S(y) = Σ_s dt_rec λ^{-2} φ((t_s − t0)/λ²) ζ(s, y)
std::vector<double> time_average(const LatticeField& f, const TestFunctionFamily& tf, double t0, double lambda) {
    const int M = f.M();
    const double dt_rec = f.stride * f.grid.dt();
    const double l2 = lambda * lambda;
    std::vector<double> S(M, 0.0);
    for (std::int64_t i = 0; i < f.count; ++i) {
        double u = (f.time_of(i) - t0) / l2;
        if (std::abs(u) >= 1.0) continue;
        const double a = dt_rec * tf.profile(u) / l2;
        auto z = f.slice(i);
        for (int x = 0; x < M; ++x) S[x] += a * z[x];
    }
    return S;
}

}  // namespace

double besov_norm_negative_parabolic(const LatticeField& f, double alpha, const TestFunctionFamily& tf, int stride,
                                     int time_stride) {
    check_smoothness(tf, alpha);
    const int M = f.M();
    const int s = resolve_stride(stride, M);
    const std::int64_t ts = time_stride > 0 ? time_stride : std::max<std::int64_t>(1, f.count / 64);
    double sup = 0.0;
    for (double l : tf.scales) {
        auto W = test_spectrum(M, tf, l, Profile::bump);
        const double w = std::pow(l, -alpha);
        for (std::int64_t i = 0; i < f.count; i += ts) {
            auto c = correlate(dft(time_average(f, tf, f.time_of(i), l)), W);
            for (int x = 0; x < M; x += s) sup = std::max(sup, w * std::abs(c[x]));
        }
    }
    return sup;
}

double comparison_norm(const LatticeField& coarse, const LatticeField& fine, double alpha, double eta, double T,
                       const TestFunctionFamily& tf, int stride) {
    check_smoothness(tf, alpha);
    if (fine.grid.N < coarse.grid.N) throw std::invalid_argument("reference grid must refine the discrete grid");
    if (std::abs(fine.grid.T() - coarse.grid.T()) > 1e-12)
        throw std::invalid_argument("comparison fields have different horizons");
    const int Mc = coarse.M(), Mf = fine.M();
    const int ratio = Mf / Mc;
    const std::int64_t tratio = std::int64_t(ratio) * ratio;
    const int s = resolve_stride(stride, Mc);
    double sup = 0.0;
    for (auto i : times_in(coarse, T, 0)) {
        std::int64_t j = fine.index_of_step(coarse.step_of(i) * tratio);
        if (j < 0) throw std::invalid_argument("reference field does not record a coarse time");
        const double tw = std::pow(time_weight(coarse.time_of(i), coarse.grid.eps()), weight_exp(eta));
        auto Zc = dft(coarse.slice(i));
        auto Zf = dft(fine.slice(j));
        for (double l : tf.scales) {
            auto pc = correlate(Zc, test_spectrum(Mc, tf, l, Profile::bump));
            auto pf = correlate(Zf, test_spectrum(Mf, tf, l, Profile::bump));
            const double w = tw * std::pow(l, -alpha);
            for (int x = 0; x < Mc; x += s) sup = std::max(sup, w * std::abs(pc[x] - pf[x * ratio]));
        }
    }
    return sup;
}

HolderEstimate fit_loglog(std::vector<double> scales, std::vector<double> values) {
    if (scales.size() < 3) throw std::invalid_argument("exponent fit needs at least 3 scales");
    bool any = false;
    for (double v : values) any = any || v > 0.0;
    if (!any) throw std::domain_error("degenerate exponent fit: all pairings vanish");
    const double tiny = 1e-300;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i) {
        double x = std::log(scales[i]), y = std::log(std::max(values[i], tiny));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    HolderEstimate h;
    h.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    h.intercept = (sy - h.exponent * sx) / n;
    double res = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        double e = std::log(std::max(values[i], tiny)) - h.intercept - h.exponent * std::log(scales[i]);
        res += e * e;
    }
    h.residual = std::sqrt(res / n);
    h.scales = std::move(scales);
    h.sup_pairing = std::move(values);
    return h;
}

namespace {

std::vector<double> exponent_scales(double eps, const ExponentOptions& o) {
    std::vector<double> s;
    for (double l = o.min_cells * eps; l <= o.max_scale * (1 + 1e-12); l *= 2.0) s.push_back(l);
    return s;
}

std::vector<int> base_sites(int M, int count) {
    std::vector<int> b;
    const int n = std::min(count, M);
    for (int k = 0; k < n; ++k) b.push_back(int((long long)k * M / n));
    return b;
}

}  // namespace

HolderEstimate estimate_exponent(std::span<const double> slice, const TestFunctionFamily& tf, ExponentOptions o) {
    const int M = int(slice.size());
    auto scales = exponent_scales(1.0 / M, o);
    auto base = base_sites(M, o.base_points);
    auto Z = dft(slice);
    std::vector<double> sups;
    for (double l : scales) {
        auto c = correlate(Z, test_spectrum(M, tf, l, Profile::detail));
        double m = 0.0;
        for (int x : base) m = std::max(m, std::abs(c[x]));
        sups.push_back(m);
    }
    return fit_loglog(std::move(scales), std::move(sups));
}

HolderEstimate estimate_exponent(const LatticeField& f, const TestFunctionFamily& tf, ExponentMode mode,
                                 ExponentOptions o) {
    if (f.count < 1) throw std::invalid_argument("empty field");
    if (mode == ExponentMode::space) return estimate_exponent(f.slice(f.count - 1), tf, o);
    const int M = f.M();
    auto scales = exponent_scales(f.grid.eps(), o);
    // base times 2λmax² apart: time supports are disjoint at every scale, so the number of
    // independent samples in the sup does not change with λ (otherwise the slope is biased low)
    const double lmax2 = scales.back() * scales.back();
    const double ta = f.time_of(0) + lmax2;
    if (f.time_of(f.count - 1) - lmax2 < ta + 2.0 * lmax2 * (o.base_times - 1) - 1e-12)
        throw std::invalid_argument("recorded window too short for the parabolic scales");
    std::vector<double> t0s;
    for (int k = 0; k < o.base_times; ++k) t0s.push_back(ta + 2.0 * lmax2 * k);
    auto base = base_sites(M, o.base_points);
    std::vector<double> sups;
    for (double l : scales) {
        auto W = test_spectrum(M, tf, l, Profile::detail);
        double m = 0.0;
        for (double t0 : t0s) {
            auto c = correlate(dft(time_average(f, tf, t0, l)), W);
            for (int x : base) m = std::max(m, std::abs(c[x]));
        }
        sups.push_back(m);
    }
    return fit_loglog(std::move(scales), std::move(sups));
}

}  // namespace sbe
