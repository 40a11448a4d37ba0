#ifndef TERAWAVE_CHANNELS_DD_HPP
#define TERAWAVE_CHANNELS_DD_HPP

#include <Eigen/Dense>
#include <algorithm>

#include "terawave/channels/tdl.hpp"
#include "terawave/signal.hpp"
#include "terawave/waveforms/otfs.hpp"

namespace terawave {

/// Sparse delay-Doppler channel: a small set of paths with integer delay
/// and Doppler lattice indices. Paths are kept sorted by (delay, doppler);
/// duplicates merge by gain addition.
struct DdPath {
    cplx gain;
    std::size_t delay_idx = 0;  // l, 0 <= l < M
    long long doppler_idx = 0;  // k, |k| < N
};

class DdChannel {
public:
    DdChannel() = default;

    explicit DdChannel(std::vector<DdPath> paths) {
        std::sort(paths.begin(), paths.end(), [](const DdPath& a, const DdPath& b) {
            return a.delay_idx != b.delay_idx ? a.delay_idx < b.delay_idx
                                              : a.doppler_idx < b.doppler_idx;
        });
        for (const auto& p : paths) {
            if (!paths_.empty() && paths_.back().delay_idx == p.delay_idx &&
                paths_.back().doppler_idx == p.doppler_idx)
                paths_.back().gain += p.gain;
            else
                paths_.push_back(p);
        }
    }

    const std::vector<DdPath>& paths() const { return paths_; }

    double total_power() const {
        double p = 0.0;
        for (const auto& path : paths_) p += std::norm(path.gain);
        return p;
    }

    bool time_invariant() const {
        for (const auto& p : paths_)
            if (p.doppler_idx != 0) return false;
        return true;
    }

    void check_lattice(std::size_t m_count, std::size_t n_count) const {
        for (const auto& p : paths_) {
            if (p.delay_idx >= m_count)
                throw ConfigError("DdChannel: delay index out of lattice (l >= M)");
            if (static_cast<std::size_t>(std::llabs(p.doppler_idx)) >= n_count)
                throw ConfigError("DdChannel: Doppler index out of lattice (|k| >= N)");
        }
    }

private:
    std::vector<DdPath> paths_;
};

/// Matrix-free application of H_DD = sum_i h_i Pi^{l_i} Delta^{k_i} to the
/// CP-free payload: y[u] = sum_i h_i e^{j2pi k_i (u-l_i)/MN} x[(u-l_i) mod MN].
inline std::vector<cplx> dd_apply(const std::vector<cplx>& payload, const DdChannel& ch,
                                  std::size_t m_count, std::size_t n_count) {
    const std::size_t mn = m_count * n_count;
    if (payload.size() != mn) throw ShapeError("dd_apply: payload length must be M*N");
    ch.check_lattice(m_count, n_count);

    std::vector<cplx> out(mn, cplx{0.0, 0.0});
    for (const auto& p : ch.paths()) {
        const double w = 2.0 * kPi * static_cast<double>(p.doppler_idx) / static_cast<double>(mn);
        const cplx step = std::polar(1.0, w);
        // phase e^{j w (u - l)}: start at u = 0, advance by `step` per sample
        cplx phase = std::polar(1.0, -w * static_cast<double>(p.delay_idx));
        for (std::size_t u = 0; u < mn; ++u) {
            const std::size_t src = (u + mn - (p.delay_idx % mn)) % mn;
            out[u] += p.gain * phase * payload[src];
            phase *= step;
        }
    }
    return out;
}

/// Hermitian-adjoint application, (H_DD)^H y (needed by iterative solvers).
inline std::vector<cplx> dd_apply_adjoint(const std::vector<cplx>& y, const DdChannel& ch,
                                          std::size_t m_count, std::size_t n_count) {
    const std::size_t mn = m_count * n_count;
    if (y.size() != mn) throw ShapeError("dd_apply_adjoint: length must be M*N");
    ch.check_lattice(m_count, n_count);

    std::vector<cplx> out(mn, cplx{0.0, 0.0});
    for (const auto& p : ch.paths()) {
        const double w = 2.0 * kPi * static_cast<double>(p.doppler_idx) / static_cast<double>(mn);
        const cplx gain_conj = std::conj(p.gain);
        // x[v] accumulates conj(h) e^{-j w (v + l - l)} ... adjoint of the
        // forward map: out[v] += conj(h_i) e^{-j2pi k (u - l)/MN} y[u] with
        // u = (v + l) mod MN, i.e. phase reference e^{-j w v}.
        cplx phase{1.0, 0.0};
        const cplx step = std::polar(1.0, -w);
        for (std::size_t v = 0; v < mn; ++v) {
            const std::size_t u = (v + p.delay_idx) % mn;
            out[v] += gain_conj * phase * y[u];
            phase *= step;
        }
    }
    return out;
}

/// Dense H_DD for small lattices (test oracles, direct equalization).
inline Eigen::MatrixXcd dd_build_matrix(const DdChannel& ch, std::size_t m_count,
                                        std::size_t n_count) {
    const std::size_t mn = m_count * n_count;
    ch.check_lattice(m_count, n_count);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(mn),
                                                static_cast<Eigen::Index>(mn));
    for (const auto& p : ch.paths()) {
        const double w = 2.0 * kPi * static_cast<double>(p.doppler_idx) / static_cast<double>(mn);
        for (std::size_t u = 0; u < mn; ++u) {
            const std::size_t src = (u + mn - (p.delay_idx % mn)) % mn;
            const cplx phase = std::polar(1.0, w * (static_cast<double>(u) -
                                                    static_cast<double>(p.delay_idx)));
            h(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(src)) += p.gain * phase;
        }
    }
    return h;
}

/// Effective DD-domain operator (F_N x G_rx) H_DD (F_N^H x G_tx) with
/// rectangular pulses (G = I), applied matrix-free via the OTFS transforms.
inline std::vector<cplx> dd_effective_apply(const std::vector<cplx>& d_dd, const DdChannel& ch,
                                            std::size_t m_count, std::size_t n_count) {
    std::vector<cplx> v = d_dd;
    detail::transform_rows(v, m_count, n_count, /*inverse=*/true);   // (F_N^H x I)
    v = dd_apply(v, ch, m_count, n_count);                           // H_DD
    detail::transform_rows(v, m_count, n_count, /*inverse=*/false);  // (F_N x I)
    return v;
}

inline std::vector<cplx> dd_effective_apply_adjoint(const std::vector<cplx>& y,
                                                    const DdChannel& ch, std::size_t m_count,
                                                    std::size_t n_count) {
    std::vector<cplx> v = y;
    detail::transform_rows(v, m_count, n_count, /*inverse=*/true);
    v = dd_apply_adjoint(v, ch, m_count, n_count);
    detail::transform_rows(v, m_count, n_count, /*inverse=*/false);
    return v;
}

/// Dense effective channel for small lattices.
inline Eigen::MatrixXcd dd_effective_channel(const DdChannel& ch, std::size_t m_count,
                                             std::size_t n_count) {
    const std::size_t mn = m_count * n_count;
    Eigen::MatrixXcd h(static_cast<Eigen::Index>(mn), static_cast<Eigen::Index>(mn));
    std::vector<cplx> e(mn, cplx{0.0, 0.0});
    for (std::size_t c = 0; c < mn; ++c) {
        e[c] = cplx{1.0, 0.0};
        const std::vector<cplx> col = dd_effective_apply(e, ch, m_count, n_count);
        for (std::size_t r = 0; r < mn; ++r)
            h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
        e[c] = cplx{0.0, 0.0};
    }
    return h;
}

/// Converts a TIV tapped-delay-line into a delay-Doppler channel for a
/// moving user: tap position -> delay index, per-path Doppler index
/// k = round(nu * N T) with nu = nu_max cos(theta), theta uniform.
inline DdChannel dd_from_mobility(const TdlChannel& tdl, double speed_mps, double carrier_hz,
                                  std::size_t m_count, std::size_t n_count, double delta_f_hz,
                                  RandomStream& stream) {
    if (speed_mps < 0.0) throw ConfigError("dd_from_mobility: speed must be >= 0");
    const double nu_max = max_doppler_hz(speed_mps, carrier_hz);
    if (nu_max >= delta_f_hz)
        throw ConfigError(
            "dd_from_mobility: infeasible numerology, requires nu_max < delta_f < 1/tau_max");

    const double nt = static_cast<double>(n_count) / delta_f_hz;  // N*T with T = 1/delta_f
    std::vector<DdPath> paths;
    for (std::size_t l = 0; l < tdl.taps.size(); ++l) {
        if (tdl.taps[l] == cplx{0.0, 0.0}) continue;
        if (l >= m_count)
            throw ConfigError("dd_from_mobility: tap delay exceeds the delay lattice (l >= M)");
        const double theta = 2.0 * kPi * stream.uniform();
        const double nu = nu_max * std::cos(theta);
        const long long k = std::llround(nu * nt);
        paths.push_back(DdPath{tdl.taps[l], l, k});
    }
    DdChannel ch(std::move(paths));
    ch.check_lattice(m_count, n_count);
    return ch;
}

}  // namespace terawave

#endif
