#ifndef TERAWAVE_KPI_FORMULAS_HPP
#define TERAWAVE_KPI_FORMULAS_HPP

#include "terawave/waveforms/params.hpp"

namespace terawave {

/// Bit-normalized spectral efficiency (useful symbols per total
/// time-frequency resource).
inline double spectral_efficiency(Scheme scheme, const WaveformParams& p) {
    const double m = static_cast<double>(p.m_count);
    const double n = static_cast<double>(p.n_count);
    const double ncp = static_cast<double>(p.cp_len);
    const double o = static_cast<double>(p.overlap);
    switch (scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde: return m / (m + ncp);
        case Scheme::DftsOfdm: return static_cast<double>(p.spread_len) / (m + ncp);
        case Scheme::OqamFbmc: return n / (n + o - 0.5);
        case Scheme::Otfs: return m / (m + ncp / n);
    }
    throw ConfigError("spectral_efficiency: unknown scheme");
}

/// Physical-layer end-to-end latency in seconds (transmit frame duration).
inline double e2e_latency_s(Scheme scheme, const WaveformParams& p) {
    if (!(p.sample_rate_hz > 0.0)) throw ConfigError("e2e_latency_s: Fs must be > 0");
    const double m = static_cast<double>(p.m_count);
    const double n = static_cast<double>(p.n_count);
    const double ncp = static_cast<double>(p.cp_len);
    const double o = static_cast<double>(p.overlap);
    const double fs = p.sample_rate_hz;
    switch (scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::DftsOfdm: return n * (m + ncp) / fs;
        case Scheme::OqamFbmc: return m * (n + o - 0.5) / fs;
        case Scheme::Otfs: return (n * m + ncp) / fs;
    }
    throw ConfigError("e2e_latency_s: unknown scheme");
}

/// Split-radix FFT real-multiplication count, M(log2 M - 3) + 4.
inline double fft_real_mults(std::size_t m) {
    if (!is_power_of_two(m))
        throw ConfigError("fft_real_mults: split-radix count assumes a power-of-two size");
    return static_cast<double>(m) *
               (static_cast<double>(ilog2(m)) - 3.0) +
           4.0;
}

struct ComplexityReport {
    double per_symbol_real_mults = 0.0;
    double per_second_real_mults = 0.0;
};

/// Modulation+demodulation real-multiplication counts per transmit symbol
/// and per unit time (one side of the link; Tx and Rx counts coincide).
inline ComplexityReport complexity_report(Scheme scheme, const WaveformParams& p) {
    const double m = static_cast<double>(p.m_count);
    const double n = static_cast<double>(p.n_count);
    const double ncp = static_cast<double>(p.cp_len);
    const double fs = p.sample_rate_hz;
    ComplexityReport r;
    switch (scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
            // SC-FDE shifts the transform to the receiver; totals match CP-OFDM
            r.per_symbol_real_mults = fft_real_mults(p.m_count) + 4.0 * (m + ncp);
            r.per_second_real_mults = r.per_symbol_real_mults / (m + ncp) * fs;
            break;
        case Scheme::DftsOfdm:
            r.per_symbol_real_mults = fft_real_mults(p.m_count) + fft_real_mults(p.spread_len) +
                                      4.0 * (m + ncp);
            r.per_second_real_mults = r.per_symbol_real_mults / (m + ncp) * fs;
            break;
        case Scheme::OqamFbmc: {
            const double lp = static_cast<double>(p.prototype_len());
            r.per_symbol_real_mults = 2.0 * fft_real_mults(p.m_count) + 4.0 * lp + 4.0 * m;
            r.per_second_real_mults =
                n * r.per_symbol_real_mults / (m * (n + static_cast<double>(p.overlap) - 0.5)) * fs;
            break;
        }
        case Scheme::Otfs:
            r.per_symbol_real_mults = fft_real_mults(p.n_count) + 4.0 * (n + ncp / m);
            r.per_second_real_mults = m * r.per_symbol_real_mults / (n * m + ncp) * fs;
            break;
    }
    return r;
}

}  // namespace terawave

#endif
