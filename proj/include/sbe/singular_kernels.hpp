#pragma once

#include <vector>

#include "sbe/heat_kernel.hpp"
#include "sbe/measures.hpp"

namespace sbe {

// Kernel on the full parabolic lattice, stored on the box
// n_min..n_max (time index, t = n ε²) × −R..R (space index); zero outside.
struct DiscreteKernel {
    double eps = 1.0;
    int n_min = 0, n_max = -1;
    int R = 0;
    double claimed_order = 0.0;
    std::vector<double> v;

    DiscreteKernel() = default;
    DiscreteKernel(double eps_, int n_min_, int n_max_, int R_);

    int rows() const { return n_max - n_min + 1; }
    int cols() const { return 2 * R + 1; }
    double at(int n, int x) const;
    double& ref(int n, int x) { return v[std::size_t(n - n_min) * cols() + (x + R)]; }
    double mass() const;   // ε³ Σ K
};

// ‖z‖_{s,ε} = (sqrt|t| ∨ |x|) ∨ ε
double scaled_norm(double t, double x, double eps);

// K from a heat-kernel split as a lattice kernel (one zero row at t < 0 included)
DiscreteKernel from_split(const KernelSplit& ks, bool singular_part = true);

// max over |k|_s ≤ m and z of |D̄^k K(z)| / ‖z‖_{s,ε}^{ζ − |k|_s}
double order_norm(const DiscreteKernel& k, double zeta, int m);

DiscreteKernel twisted_kernel_product(const DiscreteKernel& k1, const DiscreteKernel& k2, const AtomicMeasure2D& mu);
DiscreteKernel convolve_kernels(const DiscreteKernel& k1, const DiscreteKernel& k2);

struct RenormalizedConvolution {
    DiscreteKernel kernel;
    double order = 0.0;        // ζ1 + ζ2 + 3
    double order_norm = 0.0;   // at `order`, m = 0
    bool on_boundary = false;  // ζ1 = −3 or ζ2 = 0
};

// (ℛK1 ∗ K2)(z) = ε³ Σ_w K1(w) (K2(z − w) − K2(z)); throws std::domain_error outside
// −4 < ζ1 ≤ −3, −6 − ζ1 < ζ2 ≤ 0
RenormalizedConvolution renormalized_convolve(const DiscreteKernel& k1, double zeta1, const DiscreteKernel& k2,
                                              double zeta2);

// sup of |K(z) − K(z̄)| / (‖z − z̄‖^κ (‖z‖^{ζ−κ} + ‖z̄‖^{ζ−κ}) ⦀K⦀_{ζ;2}) over dyadic offsets
double increment_bound_probe(const DiscreteKernel& k, double zeta, double kappa);
// ⦀K − K ∗ ψ⦀_{ζ−κ;0} / (ε̄^κ ⦀K⦀_{ζ;2}) with ψ a bump of radius ε̄ = radius_cells · ε
double mollification_loss_probe(const DiscreteKernel& k, double zeta, double kappa, int radius_cells);

}  // namespace sbe
