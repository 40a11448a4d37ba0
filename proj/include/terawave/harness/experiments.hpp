#ifndef TERAWAVE_HARNESS_EXPERIMENTS_HPP
#define TERAWAVE_HARNESS_EXPERIMENTS_HPP

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <thread>

#include "terawave/channels/awgn.hpp"
#include "terawave/channels/beam_split.hpp"
#include "terawave/harness/config.hpp"
#include "terawave/harness/manifest.hpp"
#include "terawave/kpi/ber.hpp"
#include "terawave/kpi/formulas.hpp"
#include "terawave/kpi/papr.hpp"
#include "terawave/waveforms/pulse_shaping.hpp"

namespace terawave {

namespace detail {

/// Index-addressed task pool: results land in slots keyed by task index, so
/// worker count and scheduling cannot change any output.
inline void parallel_tasks(std::size_t n_tasks, unsigned workers,
                           const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, std::max<std::size_t>(n_tasks, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_tasks) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline std::vector<uint8_t> random_bits(RandomStream& stream, std::size_t count) {
    std::vector<uint8_t> bits(count);
    for (auto& b : bits) b = static_cast<uint8_t>(stream.next_u64() & 1u);
    return bits;
}

inline std::uint64_t kind_tag(ExperimentKind k) { return static_cast<std::uint64_t>(k) + 1; }

// ---------------------------------------------------------------- kpi tables

inline void run_kpi_tables(const ExperimentConfig& cfg,
                           std::map<std::string, std::string>& files) {
    CsvBuilder csv("scheme,se,latency_s,mults_per_s");
    for (const auto& s : cfg.schemes) {
        const double se = spectral_efficiency(s.params.scheme, s.params);
        const double lat = e2e_latency_s(s.params.scheme, s.params);
        const ComplexityReport c = complexity_report(s.params.scheme, s.params);
        csv.row(s.label, se, lat, c.per_second_real_mults);
    }
    files["kpi.csv"] = csv.content();
}

// ----------------------------------------------------------------- papr ccdf

inline std::size_t papr_windows_per_frame(const WaveformParams& p) {
    switch (p.scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::DftsOfdm: return p.n_count;
        case Scheme::Otfs: return 1;
        case Scheme::OqamFbmc: return p.n_count > 0 ? p.n_count - 1 : 0;
    }
    return 0;
}

/// Payload-only PAPR windows of one frame (CP excluded unless asked for; the
/// OTFS hard bound and the closed-form CCDFs are stated for CP-free windows).
inline std::vector<double> papr_frame_samples(const SchemeSpec& s, const PaprSettings& set,
                                              RandomStream& stream) {
    const WaveformParams& p = s.params;
    RandomStream bit_stream = stream.fork(0);
    const std::vector<uint8_t> bits = random_bits(bit_stream, frame_bit_count(s));
    const std::vector<cplx> symbols = qam_modulate(bits, s.constellation);
    const ComplexSignal tx = tx_frame(s, symbols);

    std::vector<double> out;
    switch (p.scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::DftsOfdm: {
            const std::size_t sym = p.m_count + p.cp_len;
            if (set.pulse_shaping &&
                (p.scheme == Scheme::ScFde || p.scheme == Scheme::DftsOfdm)) {
                // shaped PAPR: strip CPs, upsample+filter the symbol stream,
                // window per block past the filter edge
                std::vector<cplx> payload;
                payload.reserve(p.n_count * p.m_count);
                for (std::size_t n = 0; n < p.n_count; ++n)
                    payload.insert(payload.end(),
                                   tx.samples.begin() +
                                       static_cast<std::ptrdiff_t>(n * sym + p.cp_len),
                                   tx.samples.begin() +
                                       static_cast<std::ptrdiff_t>((n + 1) * sym));
                const ComplexSignal shaped = apply_pulse_shaping(
                    ComplexSignal(std::move(payload), p.sample_rate_hz), set.rolloff,
                    set.span_symbols, set.oversample);
                const std::size_t w = p.m_count * set.oversample;
                const std::size_t edge = set.span_symbols * set.oversample / 2;
                return papr_per_window(shaped, w, edge);
            }
            for (std::size_t n = 0; n < p.n_count; ++n) {
                const std::size_t start = set.include_cp ? n * sym : n * sym + p.cp_len;
                const std::size_t w = set.include_cp ? sym : p.m_count;
                double peak = 0.0, acc = 0.0;
                for (std::size_t u = start; u < start + w; ++u) {
                    const double pw = std::norm(tx.samples[u]);
                    peak = std::max(peak, pw);
                    acc += pw;
                }
                out.push_back(peak / (acc / static_cast<double>(w)));
            }
            return out;
        }
        case Scheme::Otfs: {
            const std::size_t start = set.include_cp ? 0 : p.cp_len;
            const std::size_t w = set.include_cp ? tx.size() : p.m_count * p.n_count;
            ComplexSignal payload(
                std::vector<cplx>(tx.samples.begin() + static_cast<std::ptrdiff_t>(start),
                                  tx.samples.begin() + static_cast<std::ptrdiff_t>(start + w)),
                p.sample_rate_hz);
            out.push_back(papr(payload, w));
            return out;
        }
        case Scheme::OqamFbmc: {
            // steady-state windows only; the prototype ramps at both ends
            const std::size_t lp = p.prototype_len();
            std::vector<double> w = papr_per_window(tx, p.m_count, lp / 2);
            if (w.size() > p.n_count - 1) w.resize(p.n_count - 1);
            return w;
        }
    }
    return out;
}

inline void run_papr_ccdf(const ExperimentConfig& cfg,
                          std::map<std::string, std::string>& files) {
    const std::vector<double> thresholds = cfg.papr.thresholds();
    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
        const SchemeSpec& s = cfg.schemes[si];
        const std::size_t per_frame = papr_windows_per_frame(s.params);
        if (per_frame == 0)
            throw ConfigError("papr_ccdf: scheme '" + s.label + "' yields no windows (N too small)");
        const std::size_t n_frames = (cfg.papr.num_windows + per_frame - 1) / per_frame;

        std::vector<std::vector<double>> per_task(n_frames);
        parallel_tasks(n_frames, cfg.workers, [&](std::size_t f) {
            RandomStream stream(cfg.seed, mix_stream_id(kind_tag(cfg.kind), si, 0, f));
            per_task[f] = papr_frame_samples(s, cfg.papr, stream);
        });

        std::vector<double> samples;
        samples.reserve(cfg.papr.num_windows);
        for (const auto& v : per_task)
            for (double x : v) {
                if (samples.size() == cfg.papr.num_windows) break;
                samples.push_back(x);
            }
        const CcdfCurve curve = ccdf_from_samples(samples, thresholds);

        CsvBuilder csv("threshold_db,probability");
        for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i)
            csv.row(curve.thresholds_db[i], curve.probabilities[i]);
        files["ccdf_" + s.label + ".csv"] = csv.content();
    }
}

// -------------------------------------------------------------------- psd/oob

/// Oversampled transmit frame: the scheme runs on an osf*M grid with only
/// the M in-band subcarriers of one user active, offset by `center_bin`
/// from the grid center. SC-FDE and DFT-s-OFDM become spread blocks mapped
/// into the user's band (their Nyquist-rate spectra are those of CP-OFDM).
inline ComplexSignal psd_tx_frame(const SchemeSpec& s, const PsdSettings& set, long center_bin,
                                  RandomStream& stream) {
    const WaveformParams& p = s.params;
    const std::size_t osf = set.oversampling;
    const std::size_t m_fft = osf * p.m_count;

    // user's active bins on the oversampled grid, DC-centred then offset
    auto grid_bin = [&](long rel) {
        long b = (rel + center_bin) % static_cast<long>(m_fft);
        if (b < 0) b += static_cast<long>(m_fft);
        return static_cast<std::size_t>(b);
    };

    RandomStream bit_stream = stream.fork(0);
    const std::vector<uint8_t> bits = random_bits(bit_stream, frame_bit_count(s));
    const std::vector<cplx> symbols = qam_modulate(bits, s.constellation);
    const long half_m = static_cast<long>(p.m_count) / 2;

    switch (p.scheme) {
        case Scheme::CpOfdm:
        case Scheme::ScFde:
        case Scheme::DftsOfdm: {
            const std::size_t cp = osf * p.cp_len;
            const std::size_t block =
                p.scheme == Scheme::CpOfdm ? p.m_count
                : p.scheme == Scheme::ScFde ? p.m_count
                                            : p.spread_len;
            std::vector<cplx> out;
            out.reserve(p.n_count * (m_fft + cp));
            for (std::size_t n = 0; n < p.n_count; ++n) {
                std::vector<cplx> d(symbols.begin() + static_cast<std::ptrdiff_t>(n * block),
                                    symbols.begin() + static_cast<std::ptrdiff_t>((n + 1) * block));
                std::vector<cplx> bins(m_fft, cplx{0.0, 0.0});
                if (p.scheme == Scheme::CpOfdm) {
                    for (std::size_t m = 0; m < p.m_count; ++m)
                        bins[grid_bin(static_cast<long>(m) - half_m)] = d[m];
                } else {
                    const std::vector<cplx> spread = fft_unitary(d);
                    std::vector<std::size_t> rel(block);
                    if (p.scheme == Scheme::ScFde) {
                        for (std::size_t i = 0; i < block; ++i) rel[i] = i;
                    } else {
                        const WaveformParams q = p;
                        const auto active = dfts_active_bins(q);
                        rel.assign(active.begin(), active.end());
                    }
                    for (std::size_t i = 0; i < block; ++i)
                        bins[grid_bin(static_cast<long>(rel[i]) - half_m)] = spread[i];
                }
                const std::vector<cplx> x = ifft_unitary(std::move(bins));
                for (std::size_t i = 0; i < cp; ++i) out.push_back(x[m_fft - cp + i]);
                out.insert(out.end(), x.begin(), x.end());
            }
            return ComplexSignal(std::move(out),
                                 p.sample_rate_hz * static_cast<double>(osf));
        }
        case Scheme::OqamFbmc: {
            WaveformParams q = p;
            q.m_count = m_fft;
            q.cp_len = 0;
            q.sample_rate_hz = p.sample_rate_hz * static_cast<double>(osf);
            FrameGrid grid(GridDomain::TimeFrequency, m_fft, p.n_count);
            for (std::size_t n = 0; n < p.n_count; ++n)
                for (std::size_t m = 0; m < p.m_count; ++m)
                    grid.at(grid_bin(static_cast<long>(m) - half_m), n) =
                        symbols[m + n * p.m_count];
            return fbmc_modulate(grid, q);
        }
        case Scheme::Otfs:
            throw ConfigError(
                "psd_oob: otfs has the CP-OFDM spectrum at Nyquist rate; use cp_ofdm");
    }
    throw ConfigError("psd_tx_frame: unknown scheme");
}

inline void run_psd_oob(const ExperimentConfig& cfg, std::map<std::string, std::string>& files) {
    const SpectralMask mask = load_mask_csv(cfg.psd.mask_csv);
    CsvBuilder oob_csv("scheme,user,worst_margin_db,worst_offset_hz,pass");

    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
        const SchemeSpec& s = cfg.schemes[si];
        const double fs_os = cfg.sample_rate_hz * static_cast<double>(cfg.psd.oversampling);
        const double user_spacing =
            cfg.psd.channel_spacing_hz > 0.0 ? cfg.psd.channel_spacing_hz : cfg.sample_rate_hz;
        // oversampled grid keeps the original bin spacing Fs/M
        const double df = cfg.sample_rate_hz / static_cast<double>(s.params.m_count);
        const long spacing_bins = std::lround(user_spacing / df);

        // user center offsets from the composite center (symmetric layout)
        std::vector<long> centers{0};
        if (cfg.psd.users == 2)
            centers = {-spacing_bins / 2, spacing_bins - spacing_bins / 2};

        std::vector<std::vector<cplx>> per_task(cfg.psd.num_frames);
        parallel_tasks(cfg.psd.num_frames, cfg.workers, [&](std::size_t f) {
            std::vector<cplx> acc;
            for (std::size_t u = 0; u < cfg.psd.users; ++u) {
                RandomStream stream(cfg.seed,
                                    mix_stream_id(kind_tag(cfg.kind), si, u, f));
                const ComplexSignal sig = psd_tx_frame(s, cfg.psd, centers[u], stream);
                if (acc.empty()) acc.assign(sig.samples.size(), cplx{0.0, 0.0});
                for (std::size_t i = 0; i < sig.samples.size() && i < acc.size(); ++i)
                    acc[i] += sig.samples[i];
            }
            per_task[f] = std::move(acc);
        });

        std::vector<cplx> composite;
        for (auto& v : per_task) composite.insert(composite.end(), v.begin(), v.end());
        const ComplexSignal signal(std::move(composite), fs_os);
        const PsdEstimate psd =
            psd_estimate(signal, cfg.psd.segment_len, cfg.psd.overlap_frac, cfg.psd.window);

        const double composite_center =
            cfg.psd.center_hz +
            (cfg.psd.users == 2 ? user_spacing / 2.0 : 0.0);
        CsvBuilder csv("freq_hz,psd_db");
        for (std::size_t i = 0; i < psd.freq_hz.size(); ++i)
            csv.row(psd.freq_hz[i] + composite_center, psd.psd_db[i]);
        files["psd_" + s.label + ".csv"] = csv.content();

        for (std::size_t u = 0; u < cfg.psd.users; ++u) {
            const double user_center = static_cast<double>(centers[u]) * df;
            const OobReport rep = oob_check(psd, mask, user_center);
            oob_csv.row(s.label, u, rep.worst_margin_db, rep.worst_offset_hz,
                        rep.pass ? "1" : "0");
        }
    }
    files["oob_report.csv"] = oob_csv.content();
}

// ------------------------------------------------------------------ BER runs

struct BerTaskLayout {
    std::size_t n_schemes = 0;
    std::size_t n_snr = 0;
    std::size_t trials = 0;

    std::size_t total() const { return n_schemes * n_snr * trials; }
    std::size_t scheme_of(std::size_t task) const { return task / (n_snr * trials); }
    std::size_t snr_of(std::size_t task) const { return (task / trials) % n_snr; }
    std::size_t trial_of(std::size_t task) const { return task % trials; }
};

/// Optional data-aided common-phase-error removal per modulation symbol.
inline void cpe_compensate_blocks(std::vector<cplx>& est, const std::vector<cplx>& ref,
                                  std::size_t block) {
    for (std::size_t start = 0; start + block <= est.size(); start += block) {
        std::vector<cplx> eb(est.begin() + static_cast<std::ptrdiff_t>(start),
                             est.begin() + static_cast<std::ptrdiff_t>(start + block));
        std::vector<cplx> rb(ref.begin() + static_cast<std::ptrdiff_t>(start),
                             ref.begin() + static_cast<std::ptrdiff_t>(start + block));
        const cplx rot = estimate_cpe(eb, rb);
        for (std::size_t i = 0; i < block; ++i) est[start + i] *= std::conj(rot);
    }
}

inline ErrorCount ber_awgn_phn_trial(const ExperimentConfig& cfg, const SchemeSpec& s,
                                     double snr_db, RandomStream& stream) {
    RandomStream bit_stream = stream.fork(0);
    const std::vector<uint8_t> bits = random_bits(bit_stream, frame_bit_count(s));
    const std::vector<cplx> symbols = qam_modulate(bits, s.constellation);
    ComplexSignal tx = tx_frame(s, symbols);

    const PhnParams phn = cfg.phn.params(cfg.sample_rate_hz);
    RandomStream phn_stream = stream.fork(1);
    const std::vector<double> phase = phn_generate(phn, tx.size(), phn_stream);
    tx = phn_apply(tx, phase, PhnSide::Tx);

    const double sigma2 = cfg.snr.noise_power(snr_db, s.constellation.bits_per_symbol());
    RandomStream noise_stream = stream.fork(2);
    const ComplexSignal rx = awgn_add(tx, sigma2, noise_stream);

    const std::vector<cplx> flat(s.params.m_count, cplx{1.0, 0.0});
    std::vector<cplx> est =
        rx_frame_static(s, rx, flat, EqualizerSpec{EqKind::Mmse, sigma2, 1.0});
    if (cfg.phn.cpe_removal) {
        const std::size_t block = s.params.scheme == Scheme::Otfs
                                      ? frame_symbol_count(s.params)
                                      : frame_symbol_count(s.params) / s.params.n_count;
        cpe_compensate_blocks(est, symbols, block);
    }

    const std::vector<uint8_t> decided = qam_demodulate(est, s.constellation);
    return ErrorCount{count_bit_errors(bits, decided), bits.size()};
}

inline ErrorCount ber_beam_split_trial(const ExperimentConfig& cfg, const SchemeSpec& s,
                                       double snr_db, RandomStream& data_stream,
                                       RandomStream& channel_stream) {
    const WaveformParams& p = s.params;
    const double ts = 1.0 / cfg.sample_rate_hz;

    const TdlChannel tdl = generate_cluster_ray_tdl(cfg.channel.params, ts, channel_stream,
                                                    cfg.channel.k_factor_db,
                                                    cfg.channel.max_delay_s);
    std::vector<cplx> response = tdl_frequency_response(tdl, p.m_count);
    if (cfg.beam.enabled) {
        BeamSplitParams bp;
        bp.ae_count_tx = cfg.beam.ae_count_tx;
        bp.ae_count_rx = cfg.beam.ae_count_rx;
        bp.f_c_hz = cfg.beam.f_c_hz;
        bp.bw_hz = cfg.sample_rate_hz;
        bp.subcarriers = p.m_count;
        bp.steer_angle_rad = cfg.beam.steer_angle_rad;
        const std::vector<double> gain = beam_split_gain(bp);
        for (std::size_t m = 0; m < p.m_count; ++m) response[m] *= std::sqrt(gain[m]);
    }

    RandomStream bit_stream = data_stream.fork(0);
    const std::vector<uint8_t> bits = random_bits(bit_stream, frame_bit_count(s));
    const std::vector<cplx> symbols = qam_modulate(bits, s.constellation);
    const ComplexSignal tx = tx_frame(s, symbols);
    const ComplexSignal through = apply_static_channel(s, tx, response);

    const double sigma2 = cfg.snr.noise_power(snr_db, s.constellation.bits_per_symbol());
    RandomStream noise_stream = data_stream.fork(2);
    const ComplexSignal rx = awgn_add(through, sigma2, noise_stream);

    const std::vector<cplx> est =
        rx_frame_static(s, rx, response, EqualizerSpec{EqKind::Mmse, sigma2, 1.0});
    const std::vector<uint8_t> decided = qam_demodulate(est, s.constellation);
    return ErrorCount{count_bit_errors(bits, decided), bits.size()};
}

/// Time-varying linear convolution of the whole frame with the DD path set
/// (physical Doppler phases referenced to the frame start).
inline std::vector<cplx> tv_linear_apply(const std::vector<cplx>& x, const DdChannel& ch,
                                         std::size_t mn_lattice) {
    std::vector<cplx> y(x.size(), cplx{0.0, 0.0});
    for (const auto& p : ch.paths()) {
        const double w =
            2.0 * kPi * static_cast<double>(p.doppler_idx) / static_cast<double>(mn_lattice);
        for (std::size_t t = p.delay_idx; t < x.size(); ++t) {
            const cplx rot = std::polar(1.0, w * (static_cast<double>(t) -
                                                  static_cast<double>(p.delay_idx)));
            y[t] += p.gain * rot * x[t - p.delay_idx];
        }
    }
    return y;
}

inline ErrorCount ber_doubly_selective_trial(const ExperimentConfig& cfg, const SchemeSpec& s,
                                             double snr_db, RandomStream& data_stream,
                                             RandomStream& channel_stream) {
    const WaveformParams& p = s.params;
    const double ts = 1.0 / cfg.sample_rate_hz;
    const double delta_f = cfg.sample_rate_hz / static_cast<double>(p.m_count);
    const std::size_t mn = p.m_count * p.n_count;

    const TdlChannel tdl = generate_cluster_ray_tdl(cfg.channel.params, ts, channel_stream,
                                                    cfg.channel.k_factor_db,
                                                    cfg.channel.max_delay_s);
    const DdChannel dd = dd_from_mobility(tdl, cfg.mobility.speed_mps, cfg.mobility.carrier_hz,
                                          p.m_count, p.n_count, delta_f, channel_stream);

    RandomStream bit_stream = data_stream.fork(0);
    const std::vector<uint8_t> bits = random_bits(bit_stream, frame_bit_count(s));
    const std::vector<cplx> symbols = qam_modulate(bits, s.constellation);
    const double sigma2 = cfg.snr.noise_power(snr_db, s.constellation.bits_per_symbol());
    RandomStream noise_stream = data_stream.fork(2);

    if (p.scheme == Scheme::Otfs) {
        const FrameGrid grid(GridDomain::DelayDoppler, p.m_count, p.n_count, symbols);
        std::vector<cplx> payload = otfs_payload(grid);
        payload = dd_apply(payload, dd, p.m_count, p.n_count);
        const ComplexSignal rx =
            awgn_add(ComplexSignal(std::move(payload), cfg.sample_rate_hz), sigma2, noise_stream);
        const FrameGrid y_dd = otfs_payload_to_dd(rx.samples, p.m_count, p.n_count);
        const std::vector<cplx> est = otfs_equalize(
            y_dd.values(), dd, p.m_count, p.n_count, EqualizerSpec{EqKind::Mmse, sigma2, 1.0});
        const std::vector<uint8_t> decided = qam_demodulate(est, s.constellation);
        return ErrorCount{count_bit_errors(bits, decided), bits.size()};
    }

    // CP-OFDM: N CP-prefixed symbols through the same physical channel;
    // per-symbol single-tap MMSE with the response frozen at symbol centre
    // (residual Doppler ICI is the impairment under study)
    const ComplexSignal tx = tx_frame(s, symbols);
    std::vector<cplx> through = tv_linear_apply(tx.samples, dd, mn);
    const ComplexSignal rx =
        awgn_add(ComplexSignal(std::move(through), cfg.sample_rate_hz), sigma2, noise_stream);

    const std::size_t sym_len = p.m_count + p.cp_len;
    std::vector<cplx> est;
    est.reserve(mn);
    for (std::size_t n = 0; n < p.n_count; ++n) {
        std::vector<cplx> block(
            rx.samples.begin() + static_cast<std::ptrdiff_t>(n * sym_len + p.cp_len),
            rx.samples.begin() + static_cast<std::ptrdiff_t>((n + 1) * sym_len));
        std::vector<cplx> bins = fft_unitary(std::move(block));

        const double t_center = static_cast<double>(n * sym_len + p.cp_len) +
                                static_cast<double>(p.m_count) / 2.0;
        std::vector<cplx> h(p.m_count, cplx{0.0, 0.0});
        for (const auto& path : dd.paths()) {
            const double w = 2.0 * kPi * static_cast<double>(path.doppler_idx) /
                             static_cast<double>(mn);
            const cplx rot =
                std::polar(1.0, w * (t_center - static_cast<double>(path.delay_idx)));
            for (std::size_t m = 0; m < p.m_count; ++m)
                h[m] += path.gain * rot *
                        std::polar(1.0, -2.0 * kPi * static_cast<double>(m * path.delay_idx) /
                                            static_cast<double>(p.m_count));
        }
        const std::vector<cplx> eqd =
            single_tap_equalize(bins, h, EqualizerSpec{EqKind::Mmse, sigma2, 1.0});
        est.insert(est.end(), eqd.begin(), eqd.end());
    }
    const std::vector<uint8_t> decided = qam_demodulate(est, s.constellation);
    return ErrorCount{count_bit_errors(bits, decided), bits.size()};
}

inline void run_ber(const ExperimentConfig& cfg, std::map<std::string, std::string>& files) {
    BerTaskLayout layout{cfg.schemes.size(), cfg.snr.points_db.size(), cfg.trials};
    std::vector<ErrorCount> results(layout.total());

    parallel_tasks(layout.total(), cfg.workers, [&](std::size_t task) {
        const std::size_t si = layout.scheme_of(task);
        const std::size_t pi = layout.snr_of(task);
        const std::size_t ti = layout.trial_of(task);
        const SchemeSpec& s = cfg.schemes[si];
        const double snr_db = cfg.snr.points_db[pi];
        RandomStream data_stream(cfg.seed, mix_stream_id(kind_tag(cfg.kind), si, pi, ti));
        // channel draws are keyed without the scheme index so all schemes
        // face the same realization in a given (snr, trial) slot
        RandomStream channel_stream(cfg.seed,
                                    mix_stream_id(kind_tag(cfg.kind), 0x51C4A77ull, pi, ti));
        switch (cfg.kind) {
            case ExperimentKind::BerAwgnPhn:
                results[task] = ber_awgn_phn_trial(cfg, s, snr_db, data_stream);
                break;
            case ExperimentKind::BerBeamSplit:
                results[task] = ber_beam_split_trial(cfg, s, snr_db, data_stream, channel_stream);
                break;
            case ExperimentKind::BerDoublySelective:
                results[task] =
                    ber_doubly_selective_trial(cfg, s, snr_db, data_stream, channel_stream);
                break;
            default: throw ConfigError("run_ber: not a BER experiment");
        }
    });

    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
        CsvBuilder csv("snr_db,ber,ci_low,ci_high,bits,errors");
        for (std::size_t pi = 0; pi < cfg.snr.points_db.size(); ++pi) {
            ErrorCount pooled;
            for (std::size_t ti = 0; ti < cfg.trials; ++ti)
                pooled.merge(results[(si * layout.n_snr + pi) * layout.trials + ti]);
            const BerPoint pt = ber_aggregate(cfg.snr.points_db[pi], pooled);
            csv.row(pt.snr_db, pt.ber, pt.ci_low, pt.ci_high, pt.bits, pt.errors);
        }
        files["ber_" + cfg.schemes[si].label + ".csv"] = csv.content();
    }
}

}  // namespace detail

/// Runs one declarative experiment: deterministic for a fixed (config, seed)
/// independent of worker count; writes CSV artifacts plus a manifest
/// side-car and returns the manifest.
inline RunManifest run_experiment(const ExperimentConfig& cfg,
                                  const std::filesystem::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::map<std::string, std::string> files;

    switch (cfg.kind) {
        case ExperimentKind::KpiTables: detail::run_kpi_tables(cfg, files); break;
        case ExperimentKind::PaprCcdf: detail::run_papr_ccdf(cfg, files); break;
        case ExperimentKind::PsdOob: detail::run_psd_oob(cfg, files); break;
        case ExperimentKind::BerAwgnPhn:
        case ExperimentKind::BerBeamSplit:
        case ExperimentKind::BerDoublySelective: detail::run_ber(cfg, files); break;
    }

    std::filesystem::create_directories(out_dir);
    RunManifest manifest;
    manifest.experiment = experiment_name(cfg.kind);
    manifest.config_hash = fnv_hex(fnv1a64(cfg.canonical_json));
    manifest.seed = cfg.seed;
    for (const auto& [name, content] : files) {
        write_file(out_dir / name, content);
        manifest.file_checksums[name] = fnv_hex(fnv1a64(content));
    }
    manifest.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(out_dir / "manifest.txt", manifest.to_text());
    return manifest;
}

}  // namespace terawave

#endif
