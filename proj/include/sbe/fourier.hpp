#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sbe {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

// Index i of a length-M spectrum holds torus mode i for i < M/2, i - M otherwise.
inline int mode_of(int i, int M) { return i < M / 2 ? i : i - M; }

// F f(k) = eps * sum_x f(x) exp(-2 pi i k x)
Spectrum dft(std::span<const double> u);
Spectrum dft(std::span<const cplx> u);
// sum_k F(k) exp(2 pi i k x)
std::vector<cplx> idft_complex(std::span<const cplx> spec);
std::vector<double> idft(std::span<const cplx> spec);

// (f *_eps g)(x) = eps * sum_y f(x - y) g(y)
std::vector<double> convolve_space(std::span<const double> f, std::span<const double> g);

}  // namespace sbe
