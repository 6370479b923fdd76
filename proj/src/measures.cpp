#include "sbe/measures.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sbe {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_weight(double w) {
    if (!std::isfinite(w)) throw std::invalid_argument("measure weight is not finite");
}
}  // namespace

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
    auto p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

AtomicMeasure1D::AtomicMeasure1D(std::map<int, double> a) : atoms(std::move(a)) {
    bool any = false;
    radius = 1;
    for (auto [j, w] : atoms) {
        check_weight(w);
        any = any || w != 0.0;
        radius = std::max(radius, std::abs(j));
    }
    if (!any) throw std::invalid_argument("1D measure has no nonzero weight");
}

double AtomicMeasure1D::total_variation() const {
    double s = 0.0;
    for (auto [j, w] : atoms) s += std::abs(w);
    return s;
}

double AtomicMeasure1D::moment(int p) const {
    double s = 0.0;
    for (auto [j, w] : atoms) s += std::pow(double(j), p) * w;
    return s;
}

AtomicMeasure2D::AtomicMeasure2D(std::map<std::pair<int, int>, double> a) : atoms(std::move(a)) {
    radius = 1;
    for (auto& [jj, w] : atoms) {
        check_weight(w);
        radius = std::max({radius, std::abs(jj.first), std::abs(jj.second)});
    }
}

double AtomicMeasure2D::mass() const {
    double s = 0.0;
    for (auto& [jj, w] : atoms) s += w;
    return s;
}

void ValidationReport::fail(std::string check, double measured, double expected) {
    ok = false;
    violations.push_back({std::move(check), measured, expected});
}

ValidationReport validate_nu(const AtomicMeasure1D& m, int k_grid_size) {
    ValidationReport r;
    const double tol = 1e-12 * std::max(1.0, m.total_variation());
    double asym = 0.0;
    for (auto [j, w] : m.atoms) {
        auto it = m.atoms.find(-j);
        double wm = it == m.atoms.end() ? 0.0 : it->second;
        asym = std::max(asym, std::abs(w - wm));
    }
    if (asym > tol) r.fail("symmetry", asym, 0.0);
    double m0 = m.moment(0), m1 = m.moment(1), m2 = m.moment(2);
    if (std::abs(m0) > tol) r.fail("mass", m0, 0.0);
    if (std::abs(m1) > tol) r.fail("first_moment", m1, 0.0);
    if (std::abs(m2 - 2.0) > tol) r.fail("second_moment", m2, 2.0);
    double worst = -INFINITY;
    for (int i = 1; i <= k_grid_size; ++i) {
        double k = double(i) / (k_grid_size + 1);
        worst = std::max(worst, fourier_nu(m, k));
    }
    // zeros of ν̂ for integer atoms sit at rationals p/q, which the grid above misses
    for (int q = 2; q <= 2 * m.radius + 2; ++q)
        for (int p = 1; p < q; ++p) worst = std::max(worst, fourier_nu(m, double(p) / q));
    if (!(worst < 0.0)) r.fail("fourier_negative", worst, 0.0);
    r.info["mass"] = m0;
    r.info["first_moment"] = m1;
    r.info["second_moment"] = m2;
    r.info["total_variation"] = m.total_variation();
    r.info["max_fourier_on_grid"] = worst;
    return r;
}

ValidationReport validate_pi(const AtomicMeasure1D& m) {
    ValidationReport r;
    const double tol = 1e-12 * std::max(1.0, m.total_variation());
    double m0 = m.moment(0), m1 = m.moment(1);
    if (std::abs(m0) > tol) r.fail("mass", m0, 0.0);
    if (std::abs(m1 - 1.0) > tol) r.fail("first_moment", m1, 1.0);
    r.info["mass"] = m0;
    r.info["first_moment"] = m1;
    return r;
}

ValidationReport validate_mu(const AtomicMeasure2D& m) {
    ValidationReport r;
    double asym = 0.0;
    for (auto& [jj, w] : m.atoms) {
        auto it = m.atoms.find({jj.second, jj.first});
        double wt = it == m.atoms.end() ? 0.0 : it->second;
        asym = std::max(asym, std::abs(w - wt));
    }
    if (asym > 1e-12) r.fail("exchange_symmetry", asym, 0.0);
    r.info["mass"] = m.mass();
    return r;
}

double fourier_nu(const AtomicMeasure1D& m, double k) {
    double s = 0.0;
    for (auto [j, w] : m.atoms) s += w * std::cos(kTwoPi * k * j);
    return s;
}

cplx fourier_pi(const AtomicMeasure1D& m, double k) {
    cplx s = 0.0;
    for (auto [j, w] : m.atoms) s += w * std::polar(1.0, -kTwoPi * k * j);
    return s;
}

cplx fourier_mu(const AtomicMeasure2D& m, double k1, double k2) {
    cplx s = 0.0;
    for (auto& [jj, w] : m.atoms) s += w * std::polar(1.0, -kTwoPi * (k1 * jj.first + k2 * jj.second));
    return s;
}

double cos_sum_over_k2(const std::vector<std::pair<double, double>>& atoms, double k) {
    if (std::abs(k) >= kTaylorThreshold) {
        double s = 0.0;
        for (auto [x, w] : atoms) s += w * std::cos(kTwoPi * k * x);
        return s / (k * k);
    }
    // cos θ = 1 - θ²/2 + θ⁴/24 - θ⁶/720, zero mass drops the constant
    double s = 0.0, k2 = k * k;
    for (auto [x, w] : atoms) {
        double a2 = (kTwoPi * x) * (kTwoPi * x);
        s += w * (-a2 / 2.0 + a2 * a2 * k2 / 24.0 - a2 * a2 * a2 * k2 * k2 / 720.0);
    }
    return s;
}

double f_of_k(const AtomicMeasure1D& nu, double k) {
    std::vector<std::pair<double, double>> at;
    for (auto [j, w] : nu.atoms) at.emplace_back(double(j), -w);
    return cos_sum_over_k2(at, k);
}

cplx g_of_k(const AtomicMeasure1D& pi, double k) {
    if (std::abs(k) >= kTaylorThreshold) return fourier_pi(pi, k) / cplx(0.0, k);
    cplx s = 0.0;
    for (auto [j, w] : pi.atoms) {
        double a = kTwoPi * j;
        double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
        s += w * cplx(-a + a3 * k * k / 6.0 - a5 * k * k * k * k / 120.0,
                      a2 * k / 2.0 - a4 * k * k * k / 24.0);
    }
    return s;
}

AtomicMeasure1D preset_1d(const std::string& name) {
    if (name == "laplacian-nn") return AtomicMeasure1D({{-1, 1.0}, {0, -2.0}, {1, 1.0}});
    if (name == "deriv-backward") return AtomicMeasure1D({{0, 1.0}, {-1, -1.0}});
    if (name == "deriv-central") return AtomicMeasure1D({{1, 0.5}, {-1, -0.5}});
    throw std::invalid_argument("unknown 1D measure preset '" + name +
                                "' (laplacian-nn, deriv-backward, deriv-central)");
}

AtomicMeasure2D preset_2d(const std::string& name) {
    if (name == "product-pointwise") return AtomicMeasure2D({{{0, 0}, 1.0}});
    if (name == "product-sasamoto-spohn")
        return AtomicMeasure2D({{{1, 1}, 1.0 / 3}, {{0, 1}, 1.0 / 6}, {{1, 0}, 1.0 / 6}, {{0, 0}, 1.0 / 3}});
    throw std::invalid_argument("unknown 2D measure preset '" + name +
                                "' (product-pointwise, product-sasamoto-spohn)");
}

nlohmann::json to_json(const AtomicMeasure1D& m) {
    nlohmann::json a = nlohmann::json::array();
    for (auto [j, w] : m.atoms) a.push_back({j, w});
    return {{"atoms", a}};
}

nlohmann::json to_json(const AtomicMeasure2D& m) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& [jj, w] : m.atoms) a.push_back({jj.first, jj.second, w});
    return {{"atoms", a}};
}

AtomicMeasure1D measure1d_from_json(const nlohmann::json& j) {
    if (j.is_string()) return preset_1d(j.get<std::string>());
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw std::invalid_argument("1D measure must be a preset name or {\"atoms\": [[j, w], ...]}");
    std::map<int, double> a;
    for (auto& e : j["atoms"]) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("1D atom must be [j, w]");
        a[e[0].get<int>()] += e[1].get<double>();
    }
    return AtomicMeasure1D(std::move(a));
}

AtomicMeasure2D measure2d_from_json(const nlohmann::json& j) {
    if (j.is_string()) return preset_2d(j.get<std::string>());
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw std::invalid_argument("2D measure must be a preset name or {\"atoms\": [[j1, j2, w], ...]}");
    std::map<std::pair<int, int>, double> a;
    for (auto& e : j["atoms"]) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("2D atom must be [j1, j2, w]");
        a[{e[0].get<int>(), e[1].get<int>()}] += e[2].get<double>();
    }
    return AtomicMeasure2D(std::move(a));
}

OperatorFamily::OperatorFamily(AtomicMeasure1D nu_, AtomicMeasure1D pi_, AtomicMeasure2D mu_)
    : nu(std::move(nu_)), pi(std::move(pi_)), mu(std::move(mu_)) {
    std::ostringstream err;
    auto collect = [&](const char* which, const ValidationReport& r) {
        for (auto& v : r.violations)
            err << which << "." << v.check << " = " << v.measured << " (expected " << v.expected << "); ";
    };
    collect("nu", validate_nu(nu));
    collect("pi", validate_pi(pi));
    collect("mu", validate_mu(mu));
    if (!err.str().empty()) throw std::invalid_argument("invalid operator family: " + err.str());
    nu_bar = nu.total_variation();
}

int OperatorFamily::max_radius() const { return std::max({nu.radius, pi.radius, mu.radius}); }

std::uint64_t OperatorFamily::fingerprint() const {
    std::string s = to_json(*this).dump();
    return fnv1a(s.data(), s.size());
}

OperatorFamily family_preset(const std::string& name) {
    if (name == "sasamoto-spohn")
        return {preset_1d("laplacian-nn"), preset_1d("deriv-backward"), preset_2d("product-sasamoto-spohn")};
    if (name == "pointwise-backward")
        return {preset_1d("laplacian-nn"), preset_1d("deriv-backward"), preset_2d("product-pointwise")};
    if (name == "pointwise-central")
        return {preset_1d("laplacian-nn"), preset_1d("deriv-central"), preset_2d("product-pointwise")};
    throw std::invalid_argument("unknown family preset '" + name +
                                "' (sasamoto-spohn, pointwise-backward, pointwise-central)");
}

OperatorFamily family_from_json(const nlohmann::json& j) {
    if (j.is_string()) return family_preset(j.get<std::string>());
    if (!j.is_object()) throw std::invalid_argument("family must be a preset name or an object");
    for (const char* f : {"nu", "pi", "mu"})
        if (!j.contains(f)) throw std::invalid_argument(std::string("family is missing field '") + f + "'");
    return {measure1d_from_json(j["nu"]), measure1d_from_json(j["pi"]), measure2d_from_json(j["mu"])};
}

nlohmann::json to_json(const OperatorFamily& f) {
    return {{"nu", to_json(f.nu)}, {"pi", to_json(f.pi)}, {"mu", to_json(f.mu)}};
}

}  // namespace sbe
