#include "sbe/operators.hpp"

#include <stdexcept>
#include <string>

namespace sbe {

namespace {

void check_pow2(int M) {
    if (M < 1 || (M & (M - 1))) throw std::invalid_argument("slice length must be a power of two");
}

Slice stencil(const std::map<int, double>& atoms, std::span<const double> u, double scale) {
    const int M = int(u.size());
    const int mask = M - 1;
    Slice out(M, 0.0);
    for (auto [j, w] : atoms) {
        const double c = scale * w;
        for (int x = 0; x < M; ++x) out[x] += c * u[(x + j) & mask];
    }
    return out;
}

bool use_spectral(Backend b, int M) {
    return b == Backend::spectral || (b == Backend::automatic && M >= kSpectralThreshold);
}

}  // namespace

void check_support(const OperatorFamily& fam, int M) {
    check_pow2(M);
    if (2 * fam.max_radius() >= M)
        throw std::invalid_argument("measure radius " + std::to_string(fam.max_radius()) +
                                    " wraps onto itself on a torus of " + std::to_string(M) + " sites");
}

double laplacian_symbol(const OperatorFamily& fam, double eps, int k) {
    return fourier_nu(fam.nu, eps * k) / (2.0 * fam.nu_bar * eps * eps);
}

cplx derivative_symbol(const OperatorFamily& fam, double eps, int k) { return fourier_pi(fam.pi, -eps * k) / eps; }

Slice laplacian(const OperatorFamily& fam, std::span<const double> u, Backend b) {
    const int M = int(u.size());
    check_support(fam, M);
    const double eps = 1.0 / M;
    if (use_spectral(b, M)) {
        auto F = dft(u);
        for (int i = 0; i < M; ++i) F[i] *= laplacian_symbol(fam, eps, mode_of(i, M));
        return idft(F);
    }
    return stencil(fam.nu.atoms, u, 1.0 / (2.0 * fam.nu_bar * eps * eps));
}

Slice derivative(const OperatorFamily& fam, std::span<const double> u, Backend b) {
    const int M = int(u.size());
    check_support(fam, M);
    const double eps = 1.0 / M;
    if (use_spectral(b, M)) {
        auto F = dft(u);
        for (int i = 0; i < M; ++i) F[i] *= derivative_symbol(fam, eps, mode_of(i, M));
        return idft(F);
    }
    return stencil(fam.pi.atoms, u, 1.0 / eps);
}

Slice twisted_product(const OperatorFamily& fam, std::span<const double> f, std::span<const double> g) {
    if (f.size() != g.size()) throw std::invalid_argument("twisted product operands differ in length");
    const int M = int(f.size());
    check_support(fam, M);
    const int mask = M - 1;
    Slice out(M, 0.0);
    for (auto& [ab, w] : fam.mu.atoms) {
        auto [a, bb] = ab;
        for (int x = 0; x < M; ++x) out[x] += w * f[(x + a) & mask] * g[(x + bb) & mask];
    }
    return out;
}

double check_parseval_twisted(const OperatorFamily& fam, std::span<const double> f, std::span<const double> g) {
    const int M = int(f.size());
    const double eps = 1.0 / M;
    auto B = twisted_product(fam, f, g);
    double lhs = 0.0;
    for (double v : B) lhs += v;
    lhs *= eps;
    auto F = dft(f), G = dft(g);
    cplx rhs = 0.0;
    for (int i = 0; i < M; ++i) {
        int k = mode_of(i, M);
        rhs += F[i] * G[(M - i) % M] * fourier_mu(fam.mu, -eps * k, eps * k);
    }
    return std::abs(lhs - rhs);
}

}  // namespace sbe
