#include "sbe/singular_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sbe {

DiscreteKernel::DiscreteKernel(double eps_, int n_min_, int n_max_, int R_)
    : eps(eps_), n_min(n_min_), n_max(n_max_), R(R_), v(std::size_t(std::max(0, n_max_ - n_min_ + 1)) * (2 * R_ + 1), 0.0) {
    if (R < 0) throw std::invalid_argument("kernel box radius must be >= 0");
}

double DiscreteKernel::at(int n, int x) const {
    if (n < n_min || n > n_max || x < -R || x > R) return 0.0;
    return v[std::size_t(n - n_min) * cols() + (x + R)];
}

double DiscreteKernel::mass() const {
    double s = 0.0;
    for (double a : v) s += a;
    return s * eps * eps * eps;
}

double scaled_norm(double t, double x, double eps) {
    return std::max({std::sqrt(std::abs(t)), std::abs(x), eps});
}

DiscreteKernel from_split(const KernelSplit& ks, bool singular_part) {
    const int M = ks.grid.M();
    DiscreteKernel k(ks.grid.eps(), -1, int(ks.n_times) - 1, M / 2);
    for (int n = 0; n < ks.n_times; ++n) {
        auto row = singular_part ? ks.K_row(n) : ks.K_hat_row(n);
        for (int x = -M / 2; x <= M / 2; ++x) {
            // ±M/2 is the same torus site; K vanishes there for the torus cutoff
            double val = row[wrap(x, M)];
            k.ref(n, x) = (x == -M / 2 || x == M / 2) ? (singular_part ? 0.0 : val) : val;
        }
    }
    return k;
}

namespace {

// forward difference D̄^{(k0,k1)} K at (n, x), k0, k1 <= 2
double forward_diff(const DiscreteKernel& k, int k0, int k1, int n, int x) {
    static constexpr double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    double s = 0.0;
    for (int a = 0; a <= k0; ++a)
        for (int b = 0; b <= k1; ++b) {
            double c = binom[k0][a] * binom[k1][b];
            if ((k0 - a + k1 - b) % 2) c = -c;
            s += c * k.at(n + a, x + b);
        }
    return s * std::pow(k.eps, -2.0 * k0 - k1);
}

}  // namespace

double order_norm(const DiscreteKernel& k, double zeta, int m) {
    if (m < 0 || m > 2) throw std::invalid_argument("order_norm supports m in {0, 1, 2}");
    double sup = 0.0;
    for (int k0 = 0; 2 * k0 <= m; ++k0)
        for (int k1 = 0; 2 * k0 + k1 <= m; ++k1) {
            const int ks = 2 * k0 + k1;
            // points whose forward stencil touches the box
            for (int n = k.n_min - k0; n <= k.n_max; ++n)
                for (int x = -k.R - k1; x <= k.R; ++x) {
                    double d = std::abs(forward_diff(k, k0, k1, n, x));
                    if (d == 0.0) continue;
                    double zn = scaled_norm(n * k.eps * k.eps, x * k.eps, k.eps);
                    sup = std::max(sup, d / std::pow(zn, zeta - ks));
                }
        }
    return sup;
}

DiscreteKernel twisted_kernel_product(const DiscreteKernel& k1, const DiscreteKernel& k2, const AtomicMeasure2D& mu) {
    if (k1.eps != k2.eps) throw std::invalid_argument("kernels live on different grids");
    const int nmin = std::max(k1.n_min, k2.n_min), nmax = std::min(k1.n_max, k2.n_max);
    const int R = std::max(k1.R, k2.R) + mu.radius;
    DiscreteKernel out(k1.eps, nmin, std::max(nmin - 1, nmax), R);
    for (int n = nmin; n <= nmax; ++n)
        for (int x = -R; x <= R; ++x) {
            double s = 0.0;
            for (auto& [ab, w] : mu.atoms) s += w * k1.at(n, x + ab.first) * k2.at(n, x + ab.second);
            out.ref(n, x) = s;
        }
    return out;
}

DiscreteKernel convolve_kernels(const DiscreteKernel& k1, const DiscreteKernel& k2) {
    if (k1.eps != k2.eps) throw std::invalid_argument("kernels live on different grids");
    const double e3 = k1.eps * k1.eps * k1.eps;
    DiscreteKernel out(k1.eps, k1.n_min + k2.n_min, k1.n_max + k2.n_max, k1.R + k2.R);
    for (int a = k1.n_min; a <= k1.n_max; ++a)
        for (int y = -k1.R; y <= k1.R; ++y) {
            const double w = k1.at(a, y);
            if (w == 0.0) continue;
            for (int b = k2.n_min; b <= k2.n_max; ++b)
                for (int x = -k2.R; x <= k2.R; ++x) out.ref(a + b, y + x) += e3 * w * k2.at(b, x);
        }
    return out;
}

RenormalizedConvolution renormalized_convolve(const DiscreteKernel& k1, double zeta1, const DiscreteKernel& k2,
                                              double zeta2) {
    if (!(zeta1 > -4.0 && zeta1 <= -3.0)) throw std::domain_error("renormalized convolution needs -4 < zeta1 <= -3");
    if (!(zeta2 > -6.0 - zeta1 && zeta2 <= 0.0))
        throw std::domain_error("renormalized convolution needs -6 - zeta1 < zeta2 <= 0");
    if (k1.eps != k2.eps) throw std::invalid_argument("kernels live on different grids");
    const double e3 = k1.eps * k1.eps * k1.eps;
    const int nmin = std::min(k1.n_min + k2.n_min, k2.n_min), nmax = std::max(k1.n_max + k2.n_max, k2.n_max);
    const int R = std::max(k1.R + k2.R, k2.R);
    RenormalizedConvolution rc;
    rc.kernel = DiscreteKernel(k1.eps, nmin, nmax, R);
    for (int n = nmin; n <= nmax; ++n)
        for (int x = -R; x <= R; ++x) {
            const double kz = k2.at(n, x);
            double s = 0.0;
            for (int a = k1.n_min; a <= k1.n_max; ++a)
                for (int y = -k1.R; y <= k1.R; ++y) {
                    const double w = k1.at(a, y);
                    if (w != 0.0) s += w * (k2.at(n - a, x - y) - kz);
                }
            rc.kernel.ref(n, x) = e3 * s;
        }
    rc.order = zeta1 + zeta2 + 3.0;
    rc.order_norm = order_norm(rc.kernel, rc.order, 0);
    rc.on_boundary = zeta1 == -3.0 || zeta2 == 0.0;
    return rc;
}

double increment_bound_probe(const DiscreteKernel& k, double zeta, double kappa) {
    if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0, 1]");
    const double kn = order_norm(k, zeta, 2);
    if (kn == 0.0) return 0.0;
    const double e = k.eps;
    std::vector<std::pair<int, int>> offsets;
    for (int s = 1; s <= std::max(k.R, k.rows()); s *= 2) {
        offsets.push_back({0, s});
        offsets.push_back({0, -s});
        if (s * s <= k.rows()) {
            offsets.push_back({s * s, 0});
            offsets.push_back({-s * s, 0});
        }
    }
    double sup = 0.0;
    for (int n = k.n_min; n <= k.n_max; ++n)
        for (int x = -k.R; x <= k.R; ++x)
            for (auto [dn, dx] : offsets) {
                const int nb = n + dn, xb = x + dx;
                double num = std::abs(k.at(n, x) - k.at(nb, xb));
                if (num == 0.0) continue;
                double den = std::pow(scaled_norm(dn * e * e, dx * e, e), kappa) *
                             (std::pow(scaled_norm(n * e * e, x * e, e), zeta - kappa) +
                              std::pow(scaled_norm(nb * e * e, xb * e, e), zeta - kappa));
                sup = std::max(sup, num / (den * kn));
            }
    return sup;
}

double mollification_loss_probe(const DiscreteKernel& k, double zeta, double kappa, int r) {
    if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0, 1]");
    if (r < 1) throw std::invalid_argument("mollifier radius must be >= 1 cell");
    const double kn = order_norm(k, zeta, 2);
    if (kn == 0.0) return 0.0;
    auto ax = bump_taps(r), at = bump_taps(r * r);
    const int rt = r * r;
    DiscreteKernel diff(k.eps, k.n_min - rt, k.n_max + rt, k.R + r);
    for (int n = diff.n_min; n <= diff.n_max; ++n)
        for (int x = -diff.R; x <= diff.R; ++x) {
            double s = 0.0;
            for (int a = -rt; a <= rt; ++a)
                for (int b = -r; b <= r; ++b) s += at[a + rt] * ax[b + r] * k.at(n - a, x - b);
            diff.ref(n, x) = k.at(n, x) - s;
        }
    const double ebar = r * k.eps;
    return order_norm(diff, zeta - kappa, 0) / (std::pow(ebar, kappa) * kn);
}

}  // namespace sbe
