#include "crossconv/fft.hpp"

#include <numbers>
#include <stdexcept>

namespace crossconv::fft {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void transform(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft: size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    // Twiddles computed directly from the angle rather than by recurrence;
    // the error stays at a few ulps even for long transforms.
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                             static_cast<double>(n);
        twiddle[j] = {std::cos(angle), std::sin(angle)};
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> w = twiddle[j * step];
                const std::complex<double> even = data[i + j];
                const std::complex<double> odd = data[i + j + len / 2] * w;
                data[i + j] = even + odd;
                data[i + j + len / 2] = even - odd;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& c : data) c *= scale;
    }
}

}  // namespace crossconv::fft
