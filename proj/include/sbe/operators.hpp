#pragma once

#include <span>

#include "sbe/fourier.hpp"
#include "sbe/grid.hpp"
#include "sbe/measures.hpp"

namespace sbe {

enum class Backend { automatic, stencil, spectral };

inline constexpr int kSpectralThreshold = 128;

// Δ_ε u(x) = (1/(2ν̄ε²)) Σ_j ν(j) u(x+εj)
Slice laplacian(const OperatorFamily& fam, std::span<const double> u, Backend b = Backend::automatic);
// D u(x) = ε^{-1} Σ_j π(j) u(x+εj)
Slice derivative(const OperatorFamily& fam, std::span<const double> u, Backend b = Backend::automatic);
// B(f,g)(x) = Σ μ(a,b) f(x+εa) g(x+εb)
Slice twisted_product(const OperatorFamily& fam, std::span<const double> f, std::span<const double> g);

// Fourier multipliers acting on F f(k), k a torus mode
double laplacian_symbol(const OperatorFamily& fam, double eps, int k);
cplx derivative_symbol(const OperatorFamily& fam, double eps, int k);

double check_parseval_twisted(const OperatorFamily& fam, std::span<const double> f, std::span<const double> g);

// throws std::invalid_argument if radius >= M/2
void check_support(const OperatorFamily& fam, int M);

}  // namespace sbe
