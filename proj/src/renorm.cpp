#include "sbe/renorm.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sbe {

namespace {

constexpr double kPi = std::numbers::pi;

// composite 16-point Gauss-Legendre, `nodes` total points on [a, b]
template <class F>
double gauss_composite(F&& f, double a, double b, int nodes) {
    using G = boost::math::quadrature::gauss<double, 16>;
    const int panels = std::max(1, nodes / 16);
    const double h = (b - a) / panels;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h, r = 0.5 * h;
        double s = 0.0;
        // abscissa holds the nonnegative half; index 0 is the centre for odd rules only
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0)
                s += w[i] * f(c);
            else
                s += w[i] * (f(c - r * x[i]) + f(c + r * x[i]));
        }
        total += r * s;
    }
    return total;
}

void check_nondegenerate(const OperatorFamily& fam, double k) {
    if (std::abs(4.0 * fam.nu_bar + fourier_nu(fam.nu, k)) < 1e-9)
        throw std::domain_error("degenerate family: 4*nu_bar + nu_hat(k) vanishes");
}

std::vector<std::pair<double, double>> pi_mu_atoms(const OperatorFamily& fam) {
    std::vector<std::pair<double, double>> at;
    for (auto [j, wp] : fam.pi.atoms)
        for (auto& [ab, wm] : fam.mu.atoms) at.emplace_back(double(j + ab.first), wp * wm);
    return at;
}

}  // namespace

std::string to_string(RenormMethod m) { return m == RenormMethod::quadrature ? "quadrature" : "lattice_sum"; }

double c2_integrand(const OperatorFamily& fam, double k) {
    check_nondegenerate(fam, k);
    const double nb = fam.nu_bar, nh = fourier_nu(fam.nu, k);
    const double g2 = std::norm(g_of_k(fam.pi, k));
    return g2 * 4.0 * nb * nb / (f_of_k(fam.nu, k) * (4.0 * nb + nh)) * fourier_mu(fam.mu, -k, k).real();
}

double c21_integrand(const OperatorFamily& fam, double k) {
    check_nondegenerate(fam, k);
    const double nb = fam.nu_bar, nh = fourier_nu(fam.nu, k), f = f_of_k(fam.nu, k);
    // Im(g(−k) μ̂(−k,0))/k = Re(π̂(−k) μ̂(−k,0))/k²
    const double im_over_k = cos_sum_over_k2(pi_mu_atoms(fam), k);
    const double g2 = std::norm(g_of_k(fam.pi, k));
    const double a = 2.0 * nb + nh, b = 4.0 * nb + nh;
    return im_over_k * g2 * 4.0 * nb * nb * a * a / (f * f * b * b) * fourier_mu(fam.mu, -k, k).real();
}

double c2_quadrature(const OperatorFamily& fam, const GridSpec& grid, int nodes) {
    return gauss_composite([&](double k) { return c2_integrand(fam, k); }, -0.5, 0.5, nodes) / grid.eps();
}

double c2_lattice_sum(const OperatorFamily& fam, const GridSpec& grid) {
    const int M = grid.M();
    const double eps = grid.eps();
    double s = 0.0;
    for (int k = -M / 2 + 1; k <= M / 2; ++k) {
        if (k == 0) continue;
        const double kap = eps * k;
        const double m = 1.0 + fourier_nu(fam.nu, kap) / (2.0 * fam.nu_bar);
        s += std::norm(fourier_pi(fam.pi, kap)) * fourier_mu(fam.mu, -kap, kap).real() / (1.0 - m * m);
    }
    return s;
}

double c21_quadrature(const OperatorFamily& fam, int nodes) {
    return gauss_composite([&](double k) { return c21_integrand(fam, k); }, -0.5, 0.5, nodes);
}

double c21_modesum(const OperatorFamily& fam, const GridSpec& grid) {
    const int M = grid.M();
    const double eps = grid.eps();
    double s = 0.0;
    for (int k = -M / 2 + 1; k <= M / 2; ++k)
        if (k != 0) s += c21_integrand(fam, eps * k);
    return eps * s;
}

double c21_stationary_lattice(const OperatorFamily& fam, const GridSpec& grid) {
    const int M = grid.M();
    const double eps = grid.eps();
    double s = 0.0;
    for (int k = -M / 2 + 1; k <= M / 2; ++k) {
        if (k == 0) continue;
        const double kap = eps * k;
        const double m = 1.0 + fourier_nu(fam.nu, kap) / (2.0 * fam.nu_bar);
        s += c21_integrand(fam, kap) / m;
    }
    return eps * s;
}

double c21(const OperatorFamily& fam, RenormMethod method, const GridSpec& grid) {
    return method == RenormMethod::quadrature ? c21_quadrature(fam) : c21_modesum(fam, grid);
}

double c2_continuum_mollified(double eps_bar, int n) {
    if (!(eps_bar > 0.0 && eps_bar <= 0.25)) throw std::invalid_argument("mollifier radius must lie in (0, 1/4]");
    // normalized bump h(r) ∝ exp(−1/(1−r²)) and its cosine transform
    auto h = [](double r) { return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; };
    const double mass = gauss_composite(h, -1.0, 1.0, 256);
    auto h_hat = [&](double s) {
        if (std::abs(s) > 40.0) return 0.0;   // |ĥ| < 1e-9 there
        return gauss_composite([&](double r) { return h(r) * std::cos(2.0 * kPi * s * r); }, 0.0, 1.0, 128) * 2.0 /
               mass;
    };
    // C = ∫ dk |ĥ(ε̄k)|² (1/2π) ∫_{−π/2}^{π/2} |ĥ(2π ε̄² k² tan θ)|² dθ, symmetric in k and θ
    const double smax = 12.0;
    auto inner = [&](double k) {
        const double a = 2.0 * kPi * eps_bar * eps_bar * k * k;
        auto f = [&](double th) {
            double v = h_hat(a * std::tan(th));
            return v * v;
        };
        return 2.0 * gauss_composite(f, 0.0, 0.5 * kPi, n) / (2.0 * kPi);
    };
    auto outer = [&](double k) {
        double v = h_hat(eps_bar * k);
        return v * v * inner(k);
    };
    return 2.0 * gauss_composite(outer, 0.0, smax / eps_bar, n);
}

RenormConstants compute_constants(const OperatorFamily& fam, const GridSpec& grid, RenormMethod method) {
    RenormConstants rc;
    rc.method = method;
    rc.grid = grid;
    rc.family_fingerprint = fam.fingerprint();
    if (method == RenormMethod::quadrature) {
        rc.c2 = c2_quadrature(fam, grid);
        rc.c21 = c21_quadrature(fam);
    } else {
        rc.c2 = c2_lattice_sum(fam, grid);
        rc.c21 = c21_modesum(fam, grid);
    }
    return rc;
}

}  // namespace sbe
