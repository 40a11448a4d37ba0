#ifndef TERAWAVE_CHANNELS_BEAM_SPLIT_HPP
#define TERAWAVE_CHANNELS_BEAM_SPLIT_HPP

#include "terawave/signal.hpp"

namespace terawave {

/// Simplified wideband analog-beamforming geometry: uniform linear arrays
/// with half-wavelength spacing at f_c, phase-shifter weights frozen at f_c.
struct BeamSplitParams {
    std::size_t ae_count_tx = 1;
    std::size_t ae_count_rx = 1;
    double f_c_hz = 0.0;
    double bw_hz = 0.0;
    std::size_t subcarriers = 1;
    double steer_angle_rad = 0.0;
    double distance_m = 1.0;

    void validate() const {
        if (ae_count_tx < 1 || ae_count_rx < 1)
            throw ConfigError("BeamSplitParams: array sizes must be >= 1");
        if (!(f_c_hz > 0.0) || !(bw_hz > 0.0))
            throw ConfigError("BeamSplitParams: f_c and bandwidth must be > 0");
        if (std::abs(steer_angle_rad) >= kPi / 2.0)
            throw ConfigError("BeamSplitParams: |steer angle| must be < pi/2");
    }
};

namespace detail {

// Normalized one-sided array gain |a(theta, f)^H w(theta, f_c)|^2 / Q^2 for
// a Q-element ULA: phase-shifter weights cancel the steering phase only at
// f = f_c, leaving a Dirichlet-kernel loss elsewhere.
inline double ula_gain(std::size_t q, double f_hz, double f_c_hz, double spacing_m,
                       double sin_theta) {
    const double x = (f_hz - f_c_hz) * spacing_m * sin_theta / kSpeedOfLight;
    const double den = std::sin(kPi * x);
    if (std::abs(den) < 1e-15) return 1.0;
    const double num = std::sin(static_cast<double>(q) * kPi * x);
    const double r = num / (static_cast<double>(q) * den);
    return r * r;
}

}  // namespace detail

/// Per-subcarrier combined Tx*Rx array gain over a band of `subcarriers`
/// centered at f_c. Subcarrier m sits at f_c + (m - (M-1)/2) * bw/M, so the
/// gain is symmetric about the band center and equals 1 there.
inline std::vector<double> beam_split_gain(const BeamSplitParams& params) {
    params.validate();
    const std::size_t m_count = params.subcarriers;
    const double spacing = kSpeedOfLight / (2.0 * params.f_c_hz);  // lambda_c / 2
    const double df = params.bw_hz / static_cast<double>(m_count);
    const double s = std::sin(params.steer_angle_rad);
    std::vector<double> gain(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        const double f =
            params.f_c_hz + (static_cast<double>(m) - (static_cast<double>(m_count) - 1.0) / 2.0) * df;
        gain[m] = detail::ula_gain(params.ae_count_tx, f, params.f_c_hz, spacing, s) *
                  detail::ula_gain(params.ae_count_rx, f, params.f_c_hz, spacing, s);
    }
    return gain;
}

}  // namespace terawave

#endif
