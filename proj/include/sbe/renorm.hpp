#pragma once

#include <cstdint>
#include <string>

#include "sbe/grid.hpp"
#include "sbe/measures.hpp"

namespace sbe {

enum class RenormMethod { quadrature, lattice_sum };

struct RenormConstants {
    double c2 = 0.0;
    double c21 = 0.0;
    RenormMethod method = RenormMethod::lattice_sum;
    GridSpec grid;
    std::uint64_t family_fingerprint = 0;
};

inline constexpr int kDefaultQuadratureNodes = 2048;

// ε^{-1} ∫ |g|² 4ν̄²/(f (4ν̄+ν̂)) μ̂(−k,k) dk over [−1/2, 1/2]
double c2_quadrature(const OperatorFamily& fam, const GridSpec& grid, int nodes = kDefaultQuadratureNodes);
// Σ_{k≠0} |π̂(εk)|² μ̂(−εk,εk) / (1 − m(k)²): stationary E[B(X1,X1)(0)] on the torus
double c2_lattice_sum(const OperatorFamily& fam, const GridSpec& grid);

// ∫ (Im(g(−k)μ̂(−k,0))/k) |g|² 4ν̄²(2ν̄+ν̂)²/(f²(4ν̄+ν̂)²) μ̂(−k,k) dk; independent of ε
double c21_quadrature(const OperatorFamily& fam, int nodes = kDefaultQuadratureNodes);
// the same integrand summed over the nonzero torus modes, ε Σ_{k≠0}
double c21_modesum(const OperatorFamily& fam, const GridSpec& grid);
double c21(const OperatorFamily& fam, RenormMethod method, const GridSpec& grid);
// exact stationary E[B(X11,X1)] for the strictly causal lattice convolution
double c21_stationary_lattice(const OperatorFamily& fam, const GridSpec& grid);

// integrands on [−1/2, 1/2], exposed for tests
double c2_integrand(const OperatorFamily& fam, double k);
double c21_integrand(const OperatorFamily& fam, double k);

double c2_continuum_mollified(double eps_bar, int quad_nodes = 256);

RenormConstants compute_constants(const OperatorFamily& fam, const GridSpec& grid,
                                  RenormMethod method = RenormMethod::lattice_sum);

std::string to_string(RenormMethod m);

}  // namespace sbe
