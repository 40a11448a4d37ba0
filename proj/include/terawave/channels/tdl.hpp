#ifndef TERAWAVE_CHANNELS_TDL_HPP
#define TERAWAVE_CHANNELS_TDL_HPP

#include <optional>

#include "terawave/fft.hpp"
#include "terawave/random.hpp"
#include "terawave/signal.hpp"

namespace terawave {

/// Time-invariant tapped-delay-line channel at tap spacing Ts.
struct TdlChannel {
    std::vector<cplx> taps;
    double tap_spacing_s = 0.0;

    double total_power() const {
        double p = 0.0;
        for (const auto& h : taps) p += std::norm(h);
        return p;
    }

    double rms_delay_spread_s() const {
        double p = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < taps.size(); ++i) {
            const double w = std::norm(taps[i]);
            const double t = static_cast<double>(i) * tap_spacing_s;
            p += w;
            m1 += w * t;
            m2 += w * t * t;
        }
        if (p <= 0.0) return 0.0;
        m1 /= p;
        m2 /= p;
        return std::sqrt(std::max(0.0, m2 - m1 * m1));
    }
};

/// Cluster/ray double-exponential power profile parameters (arrival rates in
/// 1/s, decay constants in s).
struct ClusterRayParams {
    double cluster_rate_hz = 0.0;
    double ray_rate_hz = 0.0;
    double cluster_decay_s = 0.0;
    double ray_decay_s = 0.0;
    double absorption_coeff_per_m = 0.0;
    double distance_m = 1.0;

    void validate() const {
        if (!(cluster_rate_hz > 0.0) || !(ray_rate_hz > 0.0) || !(cluster_decay_s > 0.0) ||
            !(ray_decay_s > 0.0))
            throw ConfigError("ClusterRayParams: rates and decay factors must be > 0");
    }

    /// Molecular absorption + spreading loss folded into one scalar gain.
    /// BER curves are plotted against SNR, so this only shifts the axis.
    double path_gain() const {
        return std::exp(-absorption_coeff_per_m * distance_m) / (distance_m * distance_m);
    }
};

/// Cluster/ray tapped-delay-line generator: Poisson cluster arrivals,
/// Poisson ray arrivals inside each cluster, complex Gaussian gains with
/// power exp(-Tc/Gamma) exp(-tau/gamma), quantized to the Ts grid and
/// normalized to unit total power. An optional deterministic line-of-sight
/// tap at delay zero is mixed in with the given K-factor.
inline TdlChannel generate_cluster_ray_tdl(const ClusterRayParams& params, double tap_spacing_s,
                                           RandomStream& stream,
                                           std::optional<double> k_factor_db = std::nullopt,
                                           double max_delay_s = 0.0) {
    params.validate();
    if (!(tap_spacing_s > 0.0)) throw ConfigError("generate_cluster_ray_tdl: Ts must be > 0");
    if (max_delay_s <= 0.0) max_delay_s = 8.0 * params.cluster_decay_s;

    const std::size_t n_taps =
        static_cast<std::size_t>(std::floor(max_delay_s / tap_spacing_s)) + 1;
    std::vector<cplx> taps(n_taps, cplx{0.0, 0.0});

    // first cluster at zero delay, first ray of each cluster at zero offset
    double t_cluster = 0.0;
    while (t_cluster < max_delay_s) {
        double tau_ray = 0.0;
        while (t_cluster + tau_ray < max_delay_s) {
            const double power = std::exp(-t_cluster / params.cluster_decay_s) *
                                 std::exp(-tau_ray / params.ray_decay_s);
            const cplx gain = std::sqrt(power) * stream.complex_normal();
            const std::size_t bin = static_cast<std::size_t>(
                std::llround((t_cluster + tau_ray) / tap_spacing_s));
            if (bin < n_taps) taps[bin] += gain;
            tau_ray += stream.exponential(params.ray_rate_hz);
        }
        t_cluster += stream.exponential(params.cluster_rate_hz);
    }

    // normalize diffuse part, then mix the LoS tap by K-factor
    double p = 0.0;
    for (const auto& h : taps) p += std::norm(h);
    if (p <= 0.0) {
        taps[0] = cplx{1.0, 0.0};
        p = 1.0;
    }
    double s = 1.0 / std::sqrt(p);
    if (k_factor_db.has_value()) {
        const double k = power_from_db(*k_factor_db);
        s *= std::sqrt(1.0 / (1.0 + k));
        for (auto& h : taps) h *= s;
        taps[0] += std::sqrt(k / (1.0 + k));
    } else {
        for (auto& h : taps) h *= s;
    }

    // trim trailing zeros, renormalize exactly to unit power
    std::size_t last = taps.size();
    while (last > 1 && taps[last - 1] == cplx{0.0, 0.0}) --last;
    taps.resize(last);
    double pf = 0.0;
    for (const auto& h : taps) pf += std::norm(h);
    const double sf = 1.0 / std::sqrt(pf);
    for (auto& h : taps) h *= sf;

    return TdlChannel{std::move(taps), tap_spacing_s};
}

/// Linear convolution with the tap sequence; output length in + Nch - 1.
inline ComplexSignal tdl_apply(const ComplexSignal& signal, const TdlChannel& ch) {
    if (ch.taps.empty()) throw ConfigError("tdl_apply: channel must have at least one tap");
    const std::size_t n = signal.samples.size(), k = ch.taps.size();
    std::vector<cplx> out(n + k - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const cplx x = signal.samples[i];
        if (x == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < k; ++j) out[i + j] += x * ch.taps[j];
    }
    return ComplexSignal(std::move(out), signal.sample_rate_hz);
}

/// M-point frequency response (circulant eigenvalues): unnormalized DFT of
/// the zero-padded taps.
inline std::vector<cplx> tdl_frequency_response(const TdlChannel& ch, std::size_t m_count) {
    if (ch.taps.size() > m_count)
        throw ConfigError("tdl_frequency_response: channel longer than DFT size");
    std::vector<cplx> padded(m_count, cplx{0.0, 0.0});
    std::copy(ch.taps.begin(), ch.taps.end(), padded.begin());
    return dft_unnormalized(std::move(padded));
}

}  // namespace terawave

#endif
