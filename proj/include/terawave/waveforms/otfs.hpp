#ifndef TERAWAVE_WAVEFORMS_OTFS_HPP
#define TERAWAVE_WAVEFORMS_OTFS_HPP

#include "terawave/fft.hpp"
#include "terawave/signal.hpp"
#include "terawave/waveforms/params.hpp"

namespace terawave {

namespace detail {

// In-place unitary (I)DFT along the rows of a column-major M x N grid.
inline void transform_rows(std::vector<cplx>& v, std::size_t m, std::size_t n, bool inverse) {
    std::vector<cplx> row(n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) row[c] = v[r + c * m];
        row = inverse ? ifft_unitary(std::move(row)) : fft_unitary(std::move(row));
        for (std::size_t c = 0; c < n; ++c) v[r + c * m] = row[c];
    }
}

}  // namespace detail

/// OTFS payload without CP: vec(D_DD F_N^H), i.e. the ISFFT + Heisenberg
/// cascade with rectangular windows and pulses. Exposed separately because
/// channel operators in the delay-Doppler domain act on the CP-free payload.
inline std::vector<cplx> otfs_payload(const FrameGrid& grid) {
    std::vector<cplx> v = grid.values();
    detail::transform_rows(v, grid.m_count(), grid.n_count(), /*inverse=*/true);
    return v;
}

/// Inverse of otfs_payload: reshape column-major and right-multiply by F_N.
inline FrameGrid otfs_payload_to_dd(std::vector<cplx> payload, std::size_t m_count,
                                    std::size_t n_count) {
    if (payload.size() != m_count * n_count)
        throw ShapeError("otfs_payload_to_dd: payload length must be M*N");
    detail::transform_rows(payload, m_count, n_count, /*inverse=*/false);
    return FrameGrid(GridDomain::DelayDoppler, m_count, n_count, std::move(payload));
}

/// OTFS modulator: one CP of cp_len samples for the whole M x N frame.
inline ComplexSignal otfs_modulate(const FrameGrid& grid, const WaveformParams& p) {
    p.validate();
    if (p.scheme != Scheme::Otfs) throw ConfigError("otfs_modulate: scheme must be otfs");
    if (grid.domain() != GridDomain::DelayDoppler)
        throw ShapeError("otfs_modulate: grid must be delay-Doppler domain");
    if (grid.m_count() != p.m_count || grid.n_count() != p.n_count)
        throw ShapeError("otfs_modulate: grid dimensions do not match params");

    const std::vector<cplx> payload = otfs_payload(grid);
    const std::size_t mn = payload.size();
    std::vector<cplx> out;
    out.reserve(mn + p.cp_len);
    for (std::size_t i = 0; i < p.cp_len; ++i) out.push_back(payload[mn - p.cp_len + i]);
    out.insert(out.end(), payload.begin(), payload.end());
    return ComplexSignal(std::move(out), p.sample_rate_hz);
}

/// Wigner + SFFT receive side: drop the frame CP, reshape column-major,
/// apply F_N along rows. Exact inverse of otfs_modulate over identity.
inline FrameGrid otfs_demodulate(const ComplexSignal& signal, const WaveformParams& p) {
    p.validate();
    const std::size_t mn = p.m_count * p.n_count;
    if (signal.samples.size() != mn + p.cp_len)
        throw ShapeError("otfs_demodulate: signal length must be M*N+N_CP");
    std::vector<cplx> payload(signal.samples.begin() + static_cast<std::ptrdiff_t>(p.cp_len),
                              signal.samples.end());
    return otfs_payload_to_dd(std::move(payload), p.m_count, p.n_count);
}

}  // namespace terawave

#endif
