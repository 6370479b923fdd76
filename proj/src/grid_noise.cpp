#include "sbe/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbe {

int wrap(long long i, int M) {
    long long r = i % M;
    return int(r < 0 ? r + M : r);
}

GridSpec::GridSpec(int N_, std::int64_t steps_) : N(N_), steps(steps_) {
    if (N < 0 || N > 20) throw std::invalid_argument("grid N out of range");
    if (steps < 0) throw std::invalid_argument("grid horizon must be nonnegative");
}

GridSpec GridSpec::from_horizon(int N, double T) {
    double dt = std::ldexp(1.0, -2 * N);
    double n = T / dt;
    double r = std::round(n);
    if (T < 0 || std::abs(n - r) > 1e-9 * std::max(1.0, r))
        throw std::invalid_argument("horizon T is not a multiple of dt = eps^2");
    return GridSpec(N, std::int64_t(r));
}

LatticeField::LatticeField(GridSpec g, std::int64_t t0_, std::int64_t stride_, std::int64_t count_)
    : grid(g), t0(t0_), stride(stride_), count(count_), values(std::size_t(count_) * g.M(), 0.0) {
    if (stride < 1) throw std::invalid_argument("field stride must be >= 1");
}

LatticeField LatticeField::full(GridSpec g) { return LatticeField(g, 0, 1, g.steps + 1); }

std::int64_t LatticeField::index_of_step(std::int64_t n) const {
    if (n < t0 || (n - t0) % stride) return -1;
    std::int64_t i = (n - t0) / stride;
    return i < count ? i : -1;
}

namespace {
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
double unit_open(std::uint64_t h) { return ((h >> 11) + 0.5) * 0x1.0p-53; }
}  // namespace

double standard_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmix(seed);
    h = splitmix(h ^ a);
    h = splitmix(h ^ (b * 0xd1342543de82ef95ULL));
    h = splitmix(h ^ (c * 0xaf251af3b0f025b5ULL));
    double u1 = unit_open(h);
    double u2 = unit_open(splitmix(h));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

NoiseField sample_noise(const GridSpec& grid, std::uint64_t seed) {
    NoiseField f{grid, seed, std::vector<double>(std::size_t(grid.steps) * grid.M())};
    const double sd = std::pow(grid.eps(), -1.5);
    const int M = grid.M();
    for (std::int64_t n = 0; n < grid.steps; ++n)
        for (int x = 0; x < M; ++x)
            f.values[n * M + x] = sd * standard_normal(seed, std::uint64_t(grid.N), std::uint64_t(n), std::uint64_t(x));
    return f;
}

NoiseField coarsen_noise(const NoiseField& fine) {
    if (fine.grid.N < 1) throw std::invalid_argument("cannot coarsen a grid with N = 0");
    GridSpec g(fine.grid.N - 1, fine.grid.steps / 4);
    if (fine.grid.steps % 4) throw std::invalid_argument("fine horizon is not a multiple of the coarse step");
    NoiseField c{g, fine.seed, std::vector<double>(std::size_t(g.steps) * g.M())};
    const int Mf = fine.M(), Mc = g.M();
    for (std::int64_t n = 0; n < g.steps; ++n)
        for (int i = 0; i < Mc; ++i) {
            double s = 0.0;
            for (int dn = 0; dn < 4; ++dn)
                for (int dx = 0; dx < 2; ++dx) s += fine.values[(4 * n + dn) * Mf + 2 * i + dx];
            c.values[n * Mc + i] = s / 8.0;
        }
    return c;
}

std::vector<double> bump_taps(int radius) {
    if (radius < 0) throw std::invalid_argument("bump radius must be >= 0");
    std::vector<double> w(2 * radius + 1);
    double s = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double r = double(i) / (radius + 1);
        w[i + radius] = std::exp(-1.0 / (1.0 - r * r));
        s += w[i + radius];
    }
    for (auto& v : w) v /= s;
    return w;
}

NoiseField mollify_noise(const NoiseField& noise, int rt, int rx) {
    const int M = noise.M();
    if (rt < 0 || rx < 0) throw std::invalid_argument("mollifier radii must be >= 0");
    if (2 * rx + 1 > M) throw std::invalid_argument("mollifier support exceeds the torus");
    auto at = bump_taps(rt), ax = bump_taps(rx);
    const std::int64_t T = noise.grid.steps;
    std::vector<double> tmp(noise.values.size());
    for (std::int64_t n = 0; n < T; ++n)
        for (int x = 0; x < M; ++x) {
            double s = 0.0;
            for (int j = -rx; j <= rx; ++j) s += ax[j + rx] * noise.values[n * M + wrap(x - j, M)];
            tmp[n * M + x] = s;
        }
    NoiseField out{noise.grid, noise.seed, std::vector<double>(noise.values.size())};
    for (std::int64_t n = 0; n < T; ++n) {
        // truncated and renormalized at the horizon edges
        double wsum = 0.0;
        for (int s = -rt; s <= rt; ++s)
            if (n - s >= 0 && n - s < T) wsum += at[s + rt];
        for (int s = -rt; s <= rt; ++s) {
            std::int64_t m = n - s;
            if (m < 0 || m >= T) continue;
            double w = at[s + rt] / wsum;
            for (int x = 0; x < M; ++x) out.values[n * M + x] += w * tmp[m * M + x];
        }
    }
    return out;
}

}  // namespace sbe
