#ifndef TERAWAVE_FFT_HPP
#define TERAWAVE_FFT_HPP

#include <algorithm>

#include "terawave/common.hpp"

namespace terawave {

namespace detail {

// Iterative radix-2 Cooley-Tukey, unscaled. sign = -1 forward, +1 inverse.
inline void fft_radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wlen = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Bluestein's algorithm for arbitrary n, unscaled, via a power-of-two
// convolution of length >= 2n-1. Chirp exponent is taken mod 2n to keep
// the argument bounded.
inline void fft_bluestein(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    std::vector<cplx> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k2 = (static_cast<std::size_t>(k) * k) % (2 * n);
        chirp[k] = std::polar(1.0, sign * kPi * static_cast<double>(k2) / static_cast<double>(n));
    }

    std::vector<cplx> x(m, cplx{0.0, 0.0}), y(m, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);

    fft_radix2(x, -1);
    fft_radix2(y, -1);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    fft_radix2(x, +1);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * chirp[k];
}

inline void fft_unscaled(std::vector<cplx>& a, int sign) {
    if (is_power_of_two(a.size()))
        fft_radix2(a, sign);
    else
        fft_bluestein(a, sign);
}

}  // namespace detail

// Normalized (unitary) DFT: F[p] = (1/sqrt(n)) sum_q x[q] e^{-j2pi pq/n}.
inline std::vector<cplx> fft_unitary(std::vector<cplx> x) {
    detail::fft_unscaled(x, -1);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : x) v *= s;
    return x;
}

inline std::vector<cplx> ifft_unitary(std::vector<cplx> x) {
    detail::fft_unscaled(x, +1);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : x) v *= s;
    return x;
}

// Unnormalized forward DFT (circulant eigenvalue convention).
inline std::vector<cplx> dft_unnormalized(std::vector<cplx> x) {
    detail::fft_unscaled(x, -1);
    return x;
}

}  // namespace terawave

#endif
