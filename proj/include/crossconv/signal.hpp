#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace crossconv {

// A finite real-valued discrete time series sampled at a uniform frame rate.
// Speed signals are in pixels/frame; the frame rate is carried along so that
// comparisons can reject mixed-rate inputs.
class Signal {
public:
    Signal(std::vector<double> samples, double frame_rate);

    const std::vector<double>& samples() const { return samples_; }
    double frame_rate() const { return frame_rate_; }
    std::size_t size() const { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }

private:
    std::vector<double> samples_;
    double frame_rate_;
};

// One motion's coordination system: the ankle speed drives the wrist speed.
// The transfer function between them is never evaluated by division; the pair
// itself is the representation.
class SignalPair {
public:
    SignalPair(Signal input, Signal output, std::string label);

    const Signal& input() const { return input_; }
    const Signal& output() const { return output_; }
    const std::string& label() const { return label_; }

private:
    Signal input_;
    Signal output_;
    std::string label_;
};

// Coefficients of the product polynomial A(z)Y(z) (equivalently a discrete
// convolution a*y), length len(a)+len(y)-1.
struct ConvolutionVector {
    std::vector<double> coefficients;

    std::size_t size() const { return coefficients.size(); }
    double operator[](std::size_t i) const { return coefficients[i]; }
};

// Fast path switches to an FFT above this operand length; below it the naive
// sum is both faster and exact.
inline constexpr std::size_t kDefaultFftCrossover = 64;

struct DissimilarityOptions {
    bool check_frame_rate = true;
    std::size_t fft_crossover = kDefaultFftCrossover;
};

// Direct evaluation of (f*g)[k] = sum_l f[l] g[k-l] with zero padding outside
// the sequences. Output length is len(f)+len(g)-1.
ConvolutionVector convolve(std::span<const double> f, std::span<const double> g);

// Same contract as convolve. Uses an FFT once either operand is longer than
// `crossover`; small inputs take the naive path and are bit-exact.
ConvolutionVector convolve_fast(std::span<const double> f, std::span<const double> g,
                                std::size_t crossover = kDefaultFftCrossover);

// Dis((a,b),(x,y)) = ||u - v||^2 / (||u|| ||v||) with u = a*y and v = x*b.
// Zero when the two motions share one transfer function, scale invariant in
// either pair, and symmetric. Requires len(a)+len(y) == len(x)+len(b) so that
// u and v are the same dimension; throws std::domain_error on an identically
// zero channel (the norms in the denominator would vanish).
double cross_dissimilarity(std::span<const double> a, std::span<const double> b,
                           std::span<const double> x, std::span<const double> y,
                           std::size_t fft_crossover = kDefaultFftCrossover);

double dissimilarity(const SignalPair& p, const SignalPair& q,
                     const DissimilarityOptions& opts = {});

}  // namespace crossconv
