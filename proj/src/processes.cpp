#include "sbe/processes.hpp"

#include <cmath>
#include <deque>
#include <memory>
#include <stdexcept>

#include "sbe/fourier.hpp"
#include "sbe/operators.hpp"

namespace sbe {

std::string to_string(KernelMode m) { return m == KernelMode::full_P ? "full_P" : "split_K"; }

const LatticeField& TreeProcessSet::operator[](const std::string& label) const {
    auto it = fields.find(label);
    if (it == fields.end()) throw std::out_of_range("no tree process labelled " + label);
    return it->second;
}

namespace {

class Convolution {
public:
    virtual ~Convolution() = default;
    // convolution value at the current step
    virtual Slice value() const = 0;
    // feed f at the current step, advance by one
    virtual void push(std::span<const double> f) = 0;
};

// Y_{n+1} = (1 + ε²Δ) Y_n + ε² f_n
class HeatConvolution : public Convolution {
public:
    HeatConvolution(const OperatorFamily& fam, const GridSpec& g) : fam_(fam), dt_(g.dt()), y_(g.M(), 0.0) {}
    Slice value() const override { return y_; }
    void push(std::span<const double> f) override {
        auto lap = laplacian(fam_, y_);
        for (std::size_t i = 0; i < y_.size(); ++i) y_[i] += dt_ * (lap[i] + f[i]);
    }

private:
    const OperatorFamily& fam_;
    double dt_;
    Slice y_;
};

class SplitConvolution : public Convolution {
public:
    SplitConvolution(const std::vector<Spectrum>& k_hat, const GridSpec& g) : k_(k_hat), dt_(g.dt()), M_(g.M()) {}
    Slice value() const override {
        Spectrum acc(M_, 0.0);
        // hist_[0] is the most recent input, lag 0
        for (std::size_t j = 0; j < hist_.size() && j < k_.size(); ++j)
            for (int i = 0; i < M_; ++i) acc[i] += k_[j][i] * hist_[j][i];
        for (auto& v : acc) v *= dt_;
        return idft(acc);
    }
    void push(std::span<const double> f) override {
        hist_.push_front(dft(f));
        if (hist_.size() > k_.size()) hist_.pop_back();
    }

private:
    const std::vector<Spectrum>& k_;
    double dt_;
    int M_;
    std::deque<Spectrum> hist_;
};

void add_scaled(Slice& y, std::span<const double> x, double c) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

}  // namespace

TreeProcessSet lift(const NoiseField& noise, const OperatorFamily& fam, const RenormConstants& consts,
                    LiftOptions opt) {
    if (consts.grid.N != noise.grid.N) throw std::invalid_argument("renormalization constants computed for another grid");
    if (consts.family_fingerprint != fam.fingerprint())
        throw std::invalid_argument("renormalization constants computed for another family");
    return lift(noise, fam, consts.c2, consts.c21, opt);
}

TreeProcessSet lift(const NoiseField& noise, const OperatorFamily& fam, double a, double b, LiftOptions opt) {
    const GridSpec g = noise.grid;
    const int M = g.M();
    check_support(fam, M);
    if (opt.record_stride < 1 || opt.record_from < 0 || opt.record_from > g.steps)
        throw std::invalid_argument("invalid recording window");

    TreeProcessSet tps;
    tps.grid = g;
    tps.a = a;
    tps.b = b;
    tps.mode = opt.mode;
    tps.seed = noise.seed;
    const std::int64_t count = (g.steps - opt.record_from) / opt.record_stride + 1;
    for (auto& l : kTreeLabels) tps.fields.emplace(l, LatticeField(g, opt.record_from, opt.record_stride, count));
    tps.dpt1 = LatticeField(g, opt.record_from, opt.record_stride, count);

    std::vector<Spectrum> k_hat;
    auto make_k = [&]() -> std::unique_ptr<Convolution> {
        if (opt.mode == KernelMode::full_P) return std::make_unique<HeatConvolution>(fam, g);
        return std::make_unique<SplitConvolution>(k_hat, g);
    };
    if (opt.mode == KernelMode::split_K) {
        HeatKernel hk(fam, g);
        auto ks = hk.split(g.steps);
        for (std::int64_t n = 0; n < ks.n_times; ++n) {
            auto row = ks.K_row(n);
            bool nonzero = false;
            for (double v : row) nonzero = nonzero || v != 0.0;
            if (!nonzero) break;
            k_hat.push_back(dft(row));
        }
    }
    auto c_xi = make_k(), c_t1 = make_k(), c_t2 = make_k(), c_t22 = make_k();
    HeatConvolution p_1212(fam, g), p_1222(fam, g), p_t1(fam, g);

    const Slice ones(M, 1.0);
    for (std::int64_t n = 0; n <= g.steps; ++n) {
        auto t1 = derivative(fam, c_xi->value());
        auto t11 = twisted_product(fam, ones, derivative(fam, c_t1->value()));
        auto t2 = twisted_product(fam, t1, t1);
        for (auto& v : t2) v -= a;
        auto t21 = twisted_product(fam, t11, t1);
        for (auto& v : t21) v -= b;
        auto t12 = derivative(fam, c_t2->value());
        auto t22 = twisted_product(fam, t12, t1);
        add_scaled(t22, t1, -2.0 * b);
        auto t122 = derivative(fam, c_t22->value());
        auto t124 = derivative(fam, p_1212.value());
        auto t1222 = derivative(fam, p_1222.value());
        auto dpt1 = opt.mode == KernelMode::full_P ? derivative(fam, c_t1->value()) : derivative(fam, p_t1.value());

        const std::int64_t idx = n >= opt.record_from && (n - opt.record_from) % opt.record_stride == 0
                                     ? (n - opt.record_from) / opt.record_stride
                                     : -1;
        if (idx >= 0) {
            auto put = [&](const std::string& l, const Slice& s) {
                auto dst = tps.fields.at(l).slice(idx);
                std::copy(s.begin(), s.end(), dst.begin());
            };
            put("T1", t1);
            put("T2", t2);
            put("T11", t11);
            put("T21", t21);
            put("T12", t12);
            put("T22", t22);
            put("T122", t122);
            put("T124", t124);
            put("T1222", t1222);
            auto dst = tps.dpt1.slice(idx);
            std::copy(dpt1.begin(), dpt1.end(), dst.begin());
        }
        if (n == g.steps) break;

        c_xi->push(noise.slice(n));
        c_t1->push(t1);
        c_t2->push(t2);
        c_t22->push(t22);
        p_1212.push(twisted_product(fam, t12, t12));
        auto src = twisted_product(fam, t122, t1);
        add_scaled(src, t12, -b);
        p_1222.push(src);
        if (opt.mode == KernelMode::split_K) p_t1.push(t1);
    }
    return tps;
}

double remainder_r21(const TreeProcessSet& tps, const OperatorFamily& fam, std::int64_t slice, int x, int y) {
    const int M = tps.grid.M();
    const auto& x21 = tps["T21"];
    const auto& x11 = tps["T11"];
    const auto& x1 = tps["T1"];
    double s = 0.0;
    for (auto& [ab, w] : fam.mu.atoms) s += w * x11.at(slice, wrap(x + ab.first, M)) * x1.at(slice, wrap(y + ab.second, M));
    return x21.at(slice, wrap(y, M)) - s;
}

double remainder_r1222(const TreeProcessSet& tps, const OperatorFamily& fam, std::int64_t slice, int x,
                       std::int64_t slice_bar, int x_bar) {
    const int M = tps.grid.M();
    const auto& x1222 = tps["T1222"];
    const auto& x122 = tps["T122"];
    double s = 0.0;
    for (auto& [ab, w] : fam.mu.atoms)
        s += w * x122.at(slice, wrap(x + ab.first, M)) * tps.dpt1.at(slice_bar, wrap(x_bar + ab.second, M));
    return x1222.at(slice_bar, wrap(x_bar, M)) - s;
}

double singular_order_probe(const DiscreteKernel& kernel, double zeta) { return order_norm(kernel, zeta, 2); }

McSummary mc_summary(const std::vector<double>& xs) {
    McSummary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double m = 0.0;
    for (double v : xs) m += v;
    m /= double(xs.size());
    double var = 0.0;
    for (double v : xs) var += (v - m) * (v - m);
    s.mean = m;
    s.stderr_ = xs.size() > 1 ? std::sqrt(var / double(xs.size() - 1) / double(xs.size())) : 0.0;
    return s;
}

}  // namespace sbe
