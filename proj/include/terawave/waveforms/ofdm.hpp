#ifndef TERAWAVE_WAVEFORMS_OFDM_HPP
#define TERAWAVE_WAVEFORMS_OFDM_HPP

#include "terawave/fft.hpp"
#include "terawave/signal.hpp"
#include "terawave/waveforms/params.hpp"

namespace terawave {

/// CP-OFDM modulator: per symbol column, unitary M-point IDFT followed by
/// cyclic-prefix insertion (last N_CP samples prepended).
inline ComplexSignal ofdm_modulate(const FrameGrid& grid, const WaveformParams& p) {
    p.validate();
    if (p.scheme != Scheme::CpOfdm) throw ConfigError("ofdm_modulate: scheme must be cp_ofdm");
    if (grid.m_count() != p.m_count || grid.n_count() != p.n_count)
        throw ShapeError("ofdm_modulate: grid dimensions do not match params");

    const std::size_t m = p.m_count, ncp = p.cp_len;
    std::vector<cplx> out;
    out.reserve(p.n_count * (m + ncp));
    for (std::size_t n = 0; n < p.n_count; ++n) {
        const std::vector<cplx> x = ifft_unitary(grid.column(n));
        for (std::size_t i = 0; i < ncp; ++i) out.push_back(x[m - ncp + i]);
        out.insert(out.end(), x.begin(), x.end());
    }
    return ComplexSignal(std::move(out), p.sample_rate_hz);
}

/// CP removal + unitary M-point DFT per symbol; exact inverse of
/// ofdm_modulate over an identity channel.
inline FrameGrid ofdm_demodulate(const ComplexSignal& signal, const WaveformParams& p) {
    p.validate();
    const std::size_t m = p.m_count, ncp = p.cp_len, sym = m + ncp;
    if (signal.samples.size() != p.n_count * sym)
        throw ShapeError("ofdm_demodulate: signal length must be N*(M+N_CP)");

    FrameGrid grid(GridDomain::TimeFrequency, m, p.n_count);
    for (std::size_t n = 0; n < p.n_count; ++n) {
        std::vector<cplx> block(signal.samples.begin() + static_cast<std::ptrdiff_t>(n * sym + ncp),
                                signal.samples.begin() + static_cast<std::ptrdiff_t>((n + 1) * sym));
        grid.set_column(n, fft_unitary(std::move(block)));
    }
    return grid;
}

/// SC-FDE transmit block: x = C_cp d (no spectral transform at the transmitter).
inline ComplexSignal scfde_modulate(const std::vector<cplx>& symbols, const WaveformParams& p) {
    p.validate();
    if (symbols.size() != p.m_count)
        throw ShapeError("scfde_modulate: expected exactly M symbols per block");
    const std::size_t m = p.m_count, ncp = p.cp_len;
    std::vector<cplx> out;
    out.reserve(m + ncp);
    for (std::size_t i = 0; i < ncp; ++i) out.push_back(symbols[m - ncp + i]);
    out.insert(out.end(), symbols.begin(), symbols.end());
    return ComplexSignal(std::move(out), p.sample_rate_hz);
}

/// CP removal for a single SC-FDE block.
inline std::vector<cplx> scfde_strip_cp(const ComplexSignal& signal, const WaveformParams& p) {
    if (signal.samples.size() != p.m_count + p.cp_len)
        throw ShapeError("scfde_strip_cp: signal length must be M+N_CP");
    return std::vector<cplx>(signal.samples.begin() + static_cast<std::ptrdiff_t>(p.cp_len),
                             signal.samples.end());
}

/// Active-subcarrier indices for DFT-s-OFDM (localized: first M-bar bins;
/// distributed: uniform comb of stride M/M-bar).
inline std::vector<std::size_t> dfts_active_bins(const WaveformParams& p) {
    std::vector<std::size_t> bins(p.spread_len);
    if (p.mapping == SubcarrierMapping::Localized) {
        for (std::size_t i = 0; i < p.spread_len; ++i) bins[i] = i;
    } else {
        const std::size_t stride = p.m_count / p.spread_len;
        for (std::size_t i = 0; i < p.spread_len; ++i) bins[i] = i * stride;
    }
    return bins;
}

/// DFT-s-OFDM transmit block: M-bar point DFT spreading, subcarrier mapping,
/// M-point IDFT, CP insertion.
inline ComplexSignal dfts_ofdm_modulate(const std::vector<cplx>& symbols,
                                        const WaveformParams& p) {
    p.validate();
    if (p.scheme != Scheme::DftsOfdm)
        throw ConfigError("dfts_ofdm_modulate: scheme must be dfts_ofdm");
    if (symbols.size() != p.spread_len)
        throw ShapeError("dfts_ofdm_modulate: expected exactly spread_len symbols");

    const std::vector<cplx> spread = fft_unitary(symbols);
    std::vector<cplx> bins_full(p.m_count, cplx{0.0, 0.0});
    const auto bins = dfts_active_bins(p);
    for (std::size_t i = 0; i < bins.size(); ++i) bins_full[bins[i]] = spread[i];

    const std::vector<cplx> x = ifft_unitary(std::move(bins_full));
    std::vector<cplx> out;
    out.reserve(p.m_count + p.cp_len);
    for (std::size_t i = 0; i < p.cp_len; ++i) out.push_back(x[p.m_count - p.cp_len + i]);
    out.insert(out.end(), x.begin(), x.end());
    return ComplexSignal(std::move(out), p.sample_rate_hz);
}

/// Noiseless inverse of dfts_ofdm_modulate (CP removal, DFT, bin selection,
/// despreading IDFT). Equalized receive paths do the same steps with a
/// single-tap equalizer between bin selection and despreading.
inline std::vector<cplx> dfts_ofdm_demodulate(const ComplexSignal& signal,
                                              const WaveformParams& p) {
    p.validate();
    if (signal.samples.size() != p.m_count + p.cp_len)
        throw ShapeError("dfts_ofdm_demodulate: signal length must be M+N_CP");
    std::vector<cplx> block(signal.samples.begin() + static_cast<std::ptrdiff_t>(p.cp_len),
                            signal.samples.end());
    const std::vector<cplx> bins_full = fft_unitary(std::move(block));
    const auto bins = dfts_active_bins(p);
    std::vector<cplx> spread(p.spread_len);
    for (std::size_t i = 0; i < bins.size(); ++i) spread[i] = bins_full[bins[i]];
    return ifft_unitary(std::move(spread));
}

}  // namespace terawave

#endif
