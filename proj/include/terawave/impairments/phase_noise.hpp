#ifndef TERAWAVE_IMPAIRMENTS_PHASE_NOISE_HPP
#define TERAWAVE_IMPAIRMENTS_PHASE_NOISE_HPP

#include "terawave/random.hpp"
#include "terawave/signal.hpp"

namespace terawave {

enum class PhnModel { Gaussian, Wiener, Combined };

/// Oscillator phase-noise parameters. K0 is the white floor level and K2
/// the 1/f^2 level, both linear (dBc/Hz figures convert via 10^(dB/10)).
/// Variances tie to the sample period T = 1/B: sigma_w^2 = 4 pi^2 K2 T,
/// sigma_g^2 = K0 / T. They are recomputed on access, never cached, so a
/// bandwidth change cannot leave stale values.
struct PhnParams {
    double k0 = 0.0;
    double k2 = 0.0;
    double bandwidth_hz = 0.0;
    PhnModel model = PhnModel::Gaussian;

    static PhnParams from_dbc(double k0_dbc_per_hz, double corner_hz, double bandwidth_hz,
                              PhnModel model) {
        PhnParams p;
        p.k0 = power_from_db(k0_dbc_per_hz);
        p.k2 = p.k0 * corner_hz;
        p.bandwidth_hz = bandwidth_hz;
        p.model = model;
        return p;
    }

    void validate() const {
        if (k0 < 0.0 || k2 < 0.0) throw ConfigError("PhnParams: K0, K2 must be >= 0");
        if (!(bandwidth_hz > 0.0)) throw ConfigError("PhnParams: bandwidth must be > 0");
    }

    double corner_freq_hz() const { return k0 > 0.0 ? k2 / k0 : 0.0; }
    double sigma_w2() const { return 4.0 * kPi * kPi * k2 / bandwidth_hz; }
    double sigma_g2() const { return k0 * bandwidth_hz; }
};

/// Model-selection criterion: the uncorrelated Gaussian model suffices iff
/// N (f_cor / B)^2 <= ln(2) / (2 pi).
inline bool phn_model_ok_gaussian(std::size_t n_count, double corner_hz, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw ConfigError("phn_model_ok_gaussian: bandwidth must be > 0");
    const double r = corner_hz / bandwidth_hz;
    return static_cast<double>(n_count) * r * r <= std::log(2.0) / (2.0 * kPi);
}

/// Phase sequence in radians. The Wiener walk starts at phi[-1] = 0; the
/// combined model draws its two components from fixed sub-streams so that
/// it equals the elementwise sum of the separately generated sequences.
inline std::vector<double> phn_generate(const PhnParams& params, std::size_t length,
                                        const RandomStream& stream) {
    params.validate();
    if (length < 1) throw ShapeError("phn_generate: length must be >= 1");

    std::vector<double> phase(length, 0.0);
    const double sw = std::sqrt(params.sigma_w2());
    const double sg = std::sqrt(params.sigma_g2());

    if (params.model == PhnModel::Wiener || params.model == PhnModel::Combined) {
        RandomStream ws = stream.fork(1);
        double walk = 0.0;
        for (std::size_t u = 0; u < length; ++u) {
            walk += sw * ws.normal();
            phase[u] = walk;
        }
    }
    if (params.model == PhnModel::Gaussian || params.model == PhnModel::Combined) {
        RandomStream gs = stream.fork(2);
        for (std::size_t u = 0; u < length; ++u) phase[u] += sg * gs.normal();
    }
    return phase;
}

enum class PhnSide { Tx, Rx };

/// Per-sample rotation x[u] e^{j phi[u]}. The side tag documents intent;
/// the experiment harness enforces Tx-before-channel / Rx-after ordering.
inline ComplexSignal phn_apply(const ComplexSignal& signal, const std::vector<double>& phase,
                               PhnSide /*side*/) {
    if (phase.size() != signal.samples.size())
        throw ShapeError("phn_apply: phase length must equal signal length");
    ComplexSignal out = signal;
    for (std::size_t u = 0; u < phase.size(); ++u)
        out.samples[u] *= std::polar(1.0, phase[u]);
    return out;
}

/// Data-aided common-phase-error estimate over one set of symbols (optional
/// per-symbol compensation, off by default in the experiments).
inline cplx estimate_cpe(const std::vector<cplx>& received, const std::vector<cplx>& reference) {
    if (received.size() != reference.size())
        throw ShapeError("estimate_cpe: length mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < received.size(); ++i) acc += received[i] * std::conj(reference[i]);
    const double mag = std::abs(acc);
    return mag > 0.0 ? acc / mag : cplx{1.0, 0.0};
}

}  // namespace terawave

#endif
