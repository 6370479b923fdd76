#include "sbe/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace sbe {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plans;

fftw_plan get_plan(int M, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(M, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    fftw_complex* a = fftw_alloc_complex(M);
    fftw_complex* b = fftw_alloc_complex(M);
    fftw_plan p = fftw_plan_dft_1d(M, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!p) throw std::runtime_error("FFTW planning failed");
    plans.emplace(key, p);
    return p;
}

std::vector<cplx> transform(std::span<const cplx> in, int sign) {
    const int M = int(in.size());
    if (M == 0) return {};
    std::vector<cplx> src(in.begin(), in.end()), out(M);
    fftw_execute_dft(get_plan(M, sign), reinterpret_cast<fftw_complex*>(src.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

Spectrum dft(std::span<const cplx> u) {
    auto out = transform(u, FFTW_FORWARD);
    const double eps = 1.0 / double(u.size());
    for (auto& v : out) v *= eps;
    return out;
}

Spectrum dft(std::span<const double> u) {
    std::vector<cplx> c(u.begin(), u.end());
    return dft(std::span<const cplx>(c));
}

std::vector<cplx> idft_complex(std::span<const cplx> spec) { return transform(spec, FFTW_BACKWARD); }

std::vector<double> idft(std::span<const cplx> spec) {
    auto c = idft_complex(spec);
    std::vector<double> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = c[i].real();
    return r;
}

std::vector<double> convolve_space(std::span<const double> f, std::span<const double> g) {
    if (f.size() != g.size()) throw std::invalid_argument("convolution operands differ in length");
    auto F = dft(f), G = dft(g);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] *= G[i];
    return idft(F);
}

}  // namespace sbe
