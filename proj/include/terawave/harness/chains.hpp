#ifndef TERAWAVE_HARNESS_CHAINS_HPP
#define TERAWAVE_HARNESS_CHAINS_HPP

#include "terawave/eq/equalizers.hpp"
#include "terawave/qam.hpp"
#include "terawave/waveforms/fbmc.hpp"
#include "terawave/waveforms/ofdm.hpp"
#include "terawave/waveforms/otfs.hpp"

namespace terawave {

/// One configured waveform under test: numerology plus constellation.
struct SchemeSpec {
    WaveformParams params;
    QamConstellation constellation;
    std::string label;
};

inline std::size_t frame_symbol_count(const WaveformParams& p) {
    switch (p.scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::OqamFbmc:
        case Scheme::Otfs: return p.m_count * p.n_count;
        case Scheme::DftsOfdm: return p.spread_len * p.n_count;
    }
    return 0;
}

inline std::size_t frame_bit_count(const SchemeSpec& s) {
    return frame_symbol_count(s.params) * s.constellation.bits_per_symbol();
}

inline std::size_t frame_sample_count(const WaveformParams& p) {
    switch (p.scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::DftsOfdm: return p.n_count * (p.m_count + p.cp_len);
        case Scheme::OqamFbmc: return fbmc_signal_len(p);
        case Scheme::Otfs: return p.m_count * p.n_count + p.cp_len;
    }
    return 0;
}

/// Symbols (column-major frame order) -> transmit signal.
inline ComplexSignal tx_frame(const SchemeSpec& s, const std::vector<cplx>& symbols) {
    const WaveformParams& p = s.params;
    if (symbols.size() != frame_symbol_count(p))
        throw ShapeError("tx_frame: wrong number of symbols for one frame");
    switch (p.scheme) {
        case Scheme::CpOfdm:
            return ofdm_modulate(FrameGrid(GridDomain::TimeFrequency, p.m_count, p.n_count, symbols),
                                 p);
        case Scheme::OqamFbmc:
            return fbmc_modulate(FrameGrid(GridDomain::TimeFrequency, p.m_count, p.n_count, symbols),
                                 p);
        case Scheme::Otfs:
            return otfs_modulate(FrameGrid(GridDomain::DelayDoppler, p.m_count, p.n_count, symbols),
                                 p);
        case Scheme::ScFde:
        case Scheme::DftsOfdm: {
            const std::size_t block = p.scheme == Scheme::ScFde ? p.m_count : p.spread_len;
            std::vector<cplx> out;
            out.reserve(frame_sample_count(p));
            for (std::size_t n = 0; n < p.n_count; ++n) {
                std::vector<cplx> d(symbols.begin() + static_cast<std::ptrdiff_t>(n * block),
                                    symbols.begin() + static_cast<std::ptrdiff_t>((n + 1) * block));
                const ComplexSignal blk = p.scheme == Scheme::ScFde ? scfde_modulate(d, p)
                                                                    : dfts_ofdm_modulate(d, p);
                out.insert(out.end(), blk.samples.begin(), blk.samples.end());
            }
            return ComplexSignal(std::move(out), p.sample_rate_hz);
        }
    }
    throw ConfigError("tx_frame: unknown scheme");
}

/// Circular convolution of an arbitrary-length block with tap vector h
/// (tap k at delay k), via the unitary transforms.
inline std::vector<cplx> circulant_apply(const std::vector<cplx>& block,
                                         const std::vector<cplx>& taps) {
    std::vector<cplx> padded(block.size(), cplx{0.0, 0.0});
    if (taps.size() > block.size())
        throw ShapeError("circulant_apply: more taps than block samples");
    std::copy(taps.begin(), taps.end(), padded.begin());
    const std::vector<cplx> eig = dft_unnormalized(std::move(padded));
    std::vector<cplx> x = fft_unitary(block);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] *= eig[i];
    return ifft_unitary(std::move(x));
}

/// Time-invariant taps equivalent to a per-subcarrier response (M bins):
/// the unnormalized inverse DFT of the response.
inline std::vector<cplx> taps_from_response(const std::vector<cplx>& response) {
    std::vector<cplx> h = response;
    detail::fft_unscaled(h, +1);
    const double s = 1.0 / static_cast<double>(h.size());
    for (auto& v : h) v *= s;
    return h;
}

/// Applies a static per-subcarrier channel response to a transmit frame
/// under each scheme's own guard-interval idealization: CP block schemes
/// and the OTFS frame see the exact (block-) circular channel their
/// equalizer models; CP-free FBMC sees the honest linear convolution
/// truncated to frame length.
inline ComplexSignal apply_static_channel(const SchemeSpec& s, const ComplexSignal& tx,
                                          const std::vector<cplx>& response) {
    const WaveformParams& p = s.params;
    if (response.size() != p.m_count)
        throw ShapeError("apply_static_channel: response must have M bins");
    ComplexSignal out = tx;
    switch (p.scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::DftsOfdm: {
            const std::size_t sym = p.m_count + p.cp_len;
            const std::vector<cplx> taps = taps_from_response(response);
            for (std::size_t n = 0; n < p.n_count; ++n) {
                std::vector<cplx> payload(
                    tx.samples.begin() + static_cast<std::ptrdiff_t>(n * sym + p.cp_len),
                    tx.samples.begin() + static_cast<std::ptrdiff_t>((n + 1) * sym));
                payload = circulant_apply(payload, taps);
                // CP re-copied from the convolved payload tail
                for (std::size_t i = 0; i < p.cp_len; ++i)
                    out.samples[n * sym + i] = payload[p.m_count - p.cp_len + i];
                std::copy(payload.begin(), payload.end(),
                          out.samples.begin() + static_cast<std::ptrdiff_t>(n * sym + p.cp_len));
            }
            return out;
        }
        case Scheme::Otfs: {
            const std::size_t mn = p.m_count * p.n_count;
            std::vector<cplx> payload(tx.samples.begin() + static_cast<std::ptrdiff_t>(p.cp_len),
                                      tx.samples.end());
            payload = circulant_apply(payload, taps_from_response(response));
            for (std::size_t i = 0; i < p.cp_len; ++i)
                out.samples[i] = payload[mn - p.cp_len + i];
            std::copy(payload.begin(), payload.end(),
                      out.samples.begin() + static_cast<std::ptrdiff_t>(p.cp_len));
            return out;
        }
        case Scheme::OqamFbmc: {
            const std::vector<cplx> taps = taps_from_response(response);
            const ComplexSignal conv = tdl_apply(tx, TdlChannel{taps, 1.0 / p.sample_rate_hz});
            out.samples.assign(conv.samples.begin(),
                               conv.samples.begin() + static_cast<std::ptrdiff_t>(tx.size()));
            return out;
        }
    }
    throw ConfigError("apply_static_channel: unknown scheme");
}

/// Receive chain against an ideal static per-subcarrier response: CP
/// removal, the scheme's spectral transform, per-bin equalization, and the
/// inverse spreading where applicable. Returns symbol estimates in transmit
/// order.
inline std::vector<cplx> rx_frame_static(const SchemeSpec& s, const ComplexSignal& rx,
                                         const std::vector<cplx>& response,
                                         const EqualizerSpec& eq) {
    const WaveformParams& p = s.params;
    if (rx.samples.size() != frame_sample_count(p))
        throw ShapeError("rx_frame_static: wrong signal length");
    if (response.size() != p.m_count)
        throw ShapeError("rx_frame_static: response must have M bins");

    std::vector<cplx> estimates;
    estimates.reserve(frame_symbol_count(p));
    switch (p.scheme) {
        case Scheme::CpOfdm: {
            const FrameGrid grid = ofdm_demodulate(rx, p);
            for (std::size_t n = 0; n < p.n_count; ++n) {
                const std::vector<cplx> eqd = single_tap_equalize(grid.column(n), response, eq);
                estimates.insert(estimates.end(), eqd.begin(), eqd.end());
            }
            return estimates;
        }
        case Scheme::ScFde: {
            const std::size_t sym = p.m_count + p.cp_len;
            for (std::size_t n = 0; n < p.n_count; ++n) {
                std::vector<cplx> payload(
                    rx.samples.begin() + static_cast<std::ptrdiff_t>(n * sym + p.cp_len),
                    rx.samples.begin() + static_cast<std::ptrdiff_t>((n + 1) * sym));
                std::vector<cplx> bins = fft_unitary(std::move(payload));
                bins = single_tap_equalize(bins, response, eq);
                const std::vector<cplx> d = ifft_unitary(std::move(bins));
                estimates.insert(estimates.end(), d.begin(), d.end());
            }
            return estimates;
        }
        case Scheme::DftsOfdm: {
            const std::size_t sym = p.m_count + p.cp_len;
            const auto active = dfts_active_bins(p);
            std::vector<cplx> h_active(active.size());
            for (std::size_t i = 0; i < active.size(); ++i) h_active[i] = response[active[i]];
            for (std::size_t n = 0; n < p.n_count; ++n) {
                std::vector<cplx> payload(
                    rx.samples.begin() + static_cast<std::ptrdiff_t>(n * sym + p.cp_len),
                    rx.samples.begin() + static_cast<std::ptrdiff_t>((n + 1) * sym));
                const std::vector<cplx> bins = fft_unitary(std::move(payload));
                std::vector<cplx> sel(active.size());
                for (std::size_t i = 0; i < active.size(); ++i) sel[i] = bins[active[i]];
                sel = single_tap_equalize(sel, h_active, eq);
                const std::vector<cplx> d = ifft_unitary(std::move(sel));
                estimates.insert(estimates.end(), d.begin(), d.end());
            }
            return estimates;
        }
        case Scheme::OqamFbmc: {
            // single-tap equalization at the analysis filter bank output,
            // then OQAM post-processing
            const std::vector<cplx> z = fbmc_matched_filter(rx, p);
            const std::size_t m = p.m_count;
            std::vector<double> a(z.size());
            const double lambda = eq.lambda();
            for (std::size_t np = 0; np < 2 * p.n_count; ++np) {
                for (std::size_t r = 0; r < m; ++r) {
                    const cplx h = response[r];
                    cplx v = z[r + np * m];
                    if (eq.kind == EqKind::Zf) {
                        if (std::abs(h) < 1e-12)
                            throw SingularityError("rx_frame_static: zero FBMC response at bin " +
                                                   std::to_string(r));
                        v /= h;
                    } else {
                        v = std::conj(h) * v / (std::norm(h) + lambda);
                    }
                    a[r + np * m] = v.real();
                }
            }
            const FrameGrid grid = oqam_destagger(a, p.m_count, p.n_count);
            return grid.values();
        }
        case Scheme::Otfs: {
            const FrameGrid y_dd = otfs_demodulate(rx, p);
            std::vector<DdPath> paths;
            const std::vector<cplx> taps = taps_from_response(response);
            for (std::size_t l = 0; l < taps.size(); ++l)
                if (std::abs(taps[l]) > 0.0) paths.push_back(DdPath{taps[l], l, 0});
            const DdChannel ch(std::move(paths));
            return otfs_equalize(y_dd.values(), ch, p.m_count, p.n_count, eq);
        }
    }
    throw ConfigError("rx_frame_static: unknown scheme");
}

}  // namespace terawave

#endif
