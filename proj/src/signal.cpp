#include "crossconv/signal.hpp"

#include <cmath>
#include <stdexcept>

#include "crossconv/fft.hpp"

namespace crossconv {

namespace {

void require_samples(std::span<const double> s, const char* what) {
    if (s.empty())
        throw std::invalid_argument(std::string(what) + ": empty input");
    for (double v : s)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

bool all_zero(std::span<const double> s) {
    for (double v : s)
        if (v != 0.0) return false;
    return true;
}

double norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double c : v) acc += c * c;
    return std::sqrt(acc);
}

}  // namespace

Signal::Signal(std::vector<double> samples, double frame_rate)
    : samples_(std::move(samples)), frame_rate_(frame_rate) {
    if (samples_.size() < 2)
        throw std::invalid_argument("Signal: needs at least 2 samples");
    for (double v : samples_)
        if (!std::isfinite(v))
            throw std::invalid_argument("Signal: non-finite sample");
    if (!(frame_rate_ > 0.0))
        throw std::invalid_argument("Signal: frame rate must be positive");
}

SignalPair::SignalPair(Signal input, Signal output, std::string label)
    : input_(std::move(input)), output_(std::move(output)), label_(std::move(label)) {
    if (input_.size() != output_.size())
        throw std::invalid_argument("SignalPair '" + label_ +
                                    "': input and output must cover the same frame range");
    if (input_.frame_rate() != output_.frame_rate())
        throw std::invalid_argument("SignalPair '" + label_ +
                                    "': input and output frame rates differ");
}

ConvolutionVector convolve(std::span<const double> f, std::span<const double> g) {
    require_samples(f, "convolve");
    require_samples(g, "convolve");
    std::vector<double> out(f.size() + g.size() - 1, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            out[i + j] += f[i] * g[j];
    return {std::move(out)};
}

ConvolutionVector convolve_fast(std::span<const double> f, std::span<const double> g,
                                std::size_t crossover) {
    require_samples(f, "convolve_fast");
    require_samples(g, "convolve_fast");
    if (std::max(f.size(), g.size()) <= crossover) return convolve(f, g);

    const std::size_t out_len = f.size() + g.size() - 1;
    const std::size_t n = fft::next_pow2(out_len);
    std::vector<std::complex<double>> fa(n), fb(n);
    for (std::size_t i = 0; i < f.size(); ++i) fa[i] = f[i];
    for (std::size_t i = 0; i < g.size(); ++i) fb[i] = g[i];
    fft::transform(fa, false);
    fft::transform(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft::transform(fa, true);

    std::vector<double> out(out_len);
    for (std::size_t k = 0; k < out_len; ++k) out[k] = fa[k].real();
    return {std::move(out)};
}

double cross_dissimilarity(std::span<const double> a, std::span<const double> b,
                           std::span<const double> x, std::span<const double> y,
                           std::size_t fft_crossover) {
    require_samples(a, "dissimilarity");
    require_samples(b, "dissimilarity");
    require_samples(x, "dissimilarity");
    require_samples(y, "dissimilarity");
    if (a.size() + y.size() != x.size() + b.size())
        throw std::invalid_argument(
            "dissimilarity: convolution vectors a*y and x*b differ in length");
    if (all_zero(a)) throw std::domain_error("degenerate signal: first pair input is identically zero");
    if (all_zero(b)) throw std::domain_error("degenerate signal: first pair output is identically zero");
    if (all_zero(x)) throw std::domain_error("degenerate signal: second pair input is identically zero");
    if (all_zero(y)) throw std::domain_error("degenerate signal: second pair output is identically zero");

    const ConvolutionVector u = convolve_fast(a, y, fft_crossover);
    const ConvolutionVector v = convolve_fast(x, b, fft_crossover);

    const double nu = norm(u.coefficients);
    const double nv = norm(v.coefficients);
    if (nu == 0.0 || nv == 0.0)
        throw std::domain_error("degenerate signal: zero-norm convolution vector");

    double num = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = u[k] - v[k];
        num += d * d;
    }
    const double dis = num / (nu * nv);
    if (!std::isfinite(dis))
        throw std::domain_error("dissimilarity: result overflowed");
    return dis;
}

double dissimilarity(const SignalPair& p, const SignalPair& q, const DissimilarityOptions& opts) {
    if (opts.check_frame_rate && p.input().frame_rate() != q.input().frame_rate())
        throw std::invalid_argument("dissimilarity: frame rates differ between '" + p.label() +
                                    "' and '" + q.label() + "'");
    auto check_channel = [](const Signal& s, const std::string& label, const char* channel) {
        if (all_zero(s.samples()))
            throw std::domain_error("degenerate signal: " + std::string(channel) + " channel of pair '" +
                                    label + "' is identically zero");
    };
    check_channel(p.input(), p.label(), "input");
    check_channel(p.output(), p.label(), "output");
    check_channel(q.input(), q.label(), "input");
    check_channel(q.output(), q.label(), "output");
    return cross_dissimilarity(p.input().samples(), p.output().samples(), q.input().samples(),
                               q.output().samples(), opts.fft_crossover);
}

}  // namespace crossconv
