#ifndef TERAWAVE_WAVEFORMS_PULSE_SHAPING_HPP
#define TERAWAVE_WAVEFORMS_PULSE_SHAPING_HPP

#include "terawave/signal.hpp"

namespace terawave {

namespace detail {

inline double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

}  // namespace detail

/// Raised-cosine impulse response cos(pi a t/T) sinc(t/T) / (1 - 4 a^2 (t/T)^2)
/// at t = u*T. The removable singularity at t = T/(2a) takes its analytic
/// limit (pi/4) sinc(1/(2a)).
inline double raised_cosine_kernel(double t_over_T, double rolloff) {
    if (rolloff < 0.0 || rolloff > 1.0)
        throw ConfigError("raised_cosine_kernel: rolloff must be in [0, 1]");
    const double u = t_over_T;
    if (rolloff > 0.0) {
        const double denom = 1.0 - 4.0 * rolloff * rolloff * u * u;
        if (std::abs(denom) < 1e-10)
            return kPi / 4.0 * detail::sinc(1.0 / (2.0 * rolloff));
        return std::cos(kPi * rolloff * u) * detail::sinc(u) / denom;
    }
    return detail::sinc(u);
}

/// Truncated unit-energy RC filter taps spanning `span_symbols` symbol
/// periods at `oversample` samples per symbol.
inline std::vector<double> raised_cosine_taps(double rolloff, std::size_t span_symbols,
                                              std::size_t oversample) {
    if (span_symbols < 1 || oversample < 1)
        throw ConfigError("raised_cosine_taps: span and oversample must be >= 1");
    const std::size_t len = span_symbols * oversample + 1;
    std::vector<double> h(len);
    const double mid = static_cast<double>(span_symbols) / 2.0;
    double e = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(oversample) - mid;
        h[i] = raised_cosine_kernel(t, rolloff);
        e += h[i] * h[i];
    }
    const double s = 1.0 / std::sqrt(e);
    for (auto& v : h) v *= s;
    return h;
}

/// Upsample-by-`oversample` and filter with the truncated unit-energy RC
/// kernel ("full" convolution; output rate = oversample * input rate).
inline ComplexSignal apply_pulse_shaping(const ComplexSignal& signal, double rolloff,
                                         std::size_t span_symbols, std::size_t oversample) {
    const std::vector<double> h = raised_cosine_taps(rolloff, span_symbols, oversample);
    const std::size_t n_in = signal.samples.size();
    const std::size_t n_up = n_in * oversample;
    std::vector<cplx> out(n_up + h.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n_in; ++i) {
        const cplx s = signal.samples[i];
        if (s == cplx{0.0, 0.0}) continue;
        const std::size_t base = i * oversample;
        for (std::size_t k = 0; k < h.size(); ++k) out[base + k] += s * h[k];
    }
    return ComplexSignal(std::move(out), signal.sample_rate_hz * static_cast<double>(oversample));
}

}  // namespace terawave

#endif
