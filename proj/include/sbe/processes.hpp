#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "sbe/grid.hpp"
#include "sbe/heat_kernel.hpp"
#include "sbe/measures.hpp"
#include "sbe/renorm.hpp"
#include "sbe/singular_kernels.hpp"

namespace sbe {

enum class KernelMode { full_P, split_K };

inline const std::array<std::string, 9> kTreeLabels = {"T1",  "T2",   "T11",  "T21",  "T12",
                                                       "T22", "T122", "T124", "T1222"};

struct LiftOptions {
    KernelMode mode = KernelMode::full_P;
    std::int64_t record_from = 0;   // first recorded time step
    std::int64_t record_stride = 1;
};

struct TreeProcessSet {
    GridSpec grid;
    double a = 0.0, b = 0.0;
    KernelMode mode = KernelMode::full_P;
    std::uint64_t seed = 0;
    std::map<std::string, LatticeField> fields;
    LatticeField dpt1;   // D_x P ⋆ X1, kept for the second remainder

    const LatticeField& operator[](const std::string& label) const;
};

// Strictly causal convolutions (K ⋆ f)(n) = ε² Σ_{m<n} K_{n−1−m} ∗_ε f_m.
TreeProcessSet lift(const NoiseField& noise, const OperatorFamily& fam, const RenormConstants& consts,
                    LiftOptions opt = {});
// same with explicit constants a, b and no fingerprint check
TreeProcessSet lift(const NoiseField& noise, const OperatorFamily& fam, double a, double b, LiftOptions opt = {});

// X21(t,y) − Σ μ(a,b) X11(t, x+εa) X1(t, y+εb); `slice` indexes the recorded slices
double remainder_r21(const TreeProcessSet& tps, const OperatorFamily& fam, std::int64_t slice, int x, int y);
// X1222(z̄) − Σ μ(a,b) X122(z + εa) (D_xP ⋆ X1)(z̄ + εb)
double remainder_r1222(const TreeProcessSet& tps, const OperatorFamily& fam, std::int64_t slice, int x,
                       std::int64_t slice_bar, int x_bar);

double singular_order_probe(const DiscreteKernel& kernel, double zeta);

struct McSummary {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};
McSummary mc_summary(const std::vector<double>& xs);

std::string to_string(KernelMode m);

}  // namespace sbe
