#ifndef TERAWAVE_HARNESS_VALIDATE_HPP
#define TERAWAVE_HARNESS_VALIDATE_HPP

#include <limits>
#include <sstream>

#include "terawave/signal.hpp"
#include "terawave/waveforms/params.hpp"

namespace terawave {

/// Channel statistics a numerology must support.
struct ChannelStats {
    double tau_rms_s = 0.0;
    double tau_max_s = 0.0;  // 0 = unknown, skip the related check
    double speed_mps = 0.0;
    double carrier_hz = 0.0;  // 0 = no mobility check
};

struct ConstraintCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct NumerologyReport {
    std::vector<ConstraintCheck> checks;
    double delta_f_hz = 0.0;
    double t_u_s = 0.0;
    double t_cp_s = 0.0;
    double b_coh_hz = 0.0;
    double t_coh_s = 0.0;
    double nu_max_hz = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Report-only check of the design inequalities
/// tau_rms <= T_CP <= T_u << T_coh and nu_max < delta_f < 1/tau_max, with
/// B_coh = 1/(5 tau_rms) and T_coh = sqrt(9/(16 pi nu_max) * 1/nu_max).
/// "<<" is graded as T_u <= T_coh / 10.
inline NumerologyReport validate_numerology(const WaveformParams& p, const ChannelStats& ch) {
    NumerologyReport rep;
    const double ts = 1.0 / p.sample_rate_hz;
    rep.t_u_s = static_cast<double>(p.m_count) * ts;
    rep.t_cp_s = static_cast<double>(p.cp_len) * ts;
    rep.delta_f_hz = 1.0 / rep.t_u_s;
    rep.b_coh_hz = ch.tau_rms_s > 0.0 ? 1.0 / (5.0 * ch.tau_rms_s)
                                      : std::numeric_limits<double>::infinity();
    rep.nu_max_hz = (ch.carrier_hz > 0.0) ? max_doppler_hz(ch.speed_mps, ch.carrier_hz) : 0.0;
    rep.t_coh_s = rep.nu_max_hz > 0.0
                      ? std::sqrt(9.0 / (16.0 * kPi * rep.nu_max_hz) / rep.nu_max_hz)
                      : std::numeric_limits<double>::infinity();

    auto add = [&rep](const std::string& name, bool pass, double lhs, double rhs) {
        std::ostringstream os;
        os.precision(6);
        os << std::scientific << lhs << (pass ? " vs " : " !vs ") << rhs;
        rep.checks.push_back({name, pass, os.str()});
    };

    add("tau_rms <= T_CP", ch.tau_rms_s <= rep.t_cp_s, ch.tau_rms_s, rep.t_cp_s);
    add("T_CP <= T_u", rep.t_cp_s <= rep.t_u_s, rep.t_cp_s, rep.t_u_s);
    add("T_u << T_coh (factor 10)", rep.t_u_s <= rep.t_coh_s / 10.0, rep.t_u_s, rep.t_coh_s);
    add("nu_max < delta_f", rep.nu_max_hz < rep.delta_f_hz, rep.nu_max_hz, rep.delta_f_hz);
    if (ch.tau_max_s > 0.0)
        add("delta_f < 1/tau_max", rep.delta_f_hz < 1.0 / ch.tau_max_s, rep.delta_f_hz,
            1.0 / ch.tau_max_s);
    return rep;
}

}  // namespace terawave

#endif
