#ifndef TERAWAVE_WAVEFORMS_FBMC_HPP
#define TERAWAVE_WAVEFORMS_FBMC_HPP

#include <array>

#include "terawave/fft.hpp"
#include "terawave/signal.hpp"
#include "terawave/waveforms/params.hpp"

namespace terawave {

/// Linear-phase prototype filter, frequency-sampling design. Coefficients
/// are scaled to unit peak; the peak sits at index L_p/2 - 1.
struct PrototypeFilter {
    std::vector<double> coefficients;
    std::size_t overlap = 0;
};

/// PHYDYAS frequency samples: (2O-1) non-zero bins. psi[1]^2 + psi[O-1]^2 = 1
/// and psi at the half-amplitude point equals 1/sqrt(2) (Nyquist conditions
/// of the frequency-sampling design).
inline std::vector<double> phydyas_frequency_samples(std::size_t overlap) {
    switch (overlap) {
        case 2: return {1.0, std::sqrt(2.0) / 2.0};
        case 3: return {1.0, 0.91143783, 0.41143783};
        case 4: return {1.0, 0.97195983, std::sqrt(2.0) / 2.0, 0.23514695};
        default: throw ConfigError("fbmc_prototype: overlap factor must be in {2, 3, 4}");
    }
}

inline PrototypeFilter fbmc_prototype(std::size_t overlap, std::size_t m_count) {
    const std::vector<double> psi = phydyas_frequency_samples(overlap);
    const std::size_t lp = overlap * m_count;
    std::vector<double> g(lp);
    double sign_alt;
    for (std::size_t i = 0; i < lp; ++i) {
        double v = 1.0;
        sign_alt = -1.0;
        for (std::size_t o = 1; o < overlap; ++o) {
            v += 2.0 * sign_alt * psi[o] *
                 std::cos(2.0 * kPi * static_cast<double>(o) * static_cast<double>(i + 1) /
                          static_cast<double>(lp));
            sign_alt = -sign_alt;
        }
        g[i] = v;
    }
    // unit peak at the center sample
    const double peak = g[lp / 2 - 1];
    for (auto& v : g) v /= peak;
    return PrototypeFilter{std::move(g), overlap};
}

namespace detail {

inline std::vector<double> unit_energy_prototype(const WaveformParams& p) {
    PrototypeFilter proto = fbmc_prototype(p.overlap, p.m_count);
    double e = 0.0;
    for (double v : proto.coefficients) e += v * v;
    const double s = 1.0 / std::sqrt(e);
    for (auto& v : proto.coefficients) v *= s;
    return std::move(proto.coefficients);
}

inline cplx quarter_turn(std::size_t k) {
    // j^(k mod 4)
    static const std::array<cplx, 4> t{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    return t[k % 4];
}

}  // namespace detail

inline std::size_t fbmc_signal_len(const WaveformParams& p) {
    // O*T_u + (N'-1)*T with N' = 2N half-symbols and T = T_u/2
    return p.overlap * p.m_count + (2 * p.n_count - 1) * (p.m_count / 2);
}

/// OQAM staggering: complex QAM symbols split into two real half-symbols at
/// T = T_u/2 offsets. Even subcarriers send real-then-imaginary, odd ones
/// the reverse (committed convention).
inline std::vector<double> oqam_stagger(const FrameGrid& grid) {
    const std::size_t m = grid.m_count(), n = grid.n_count();
    std::vector<double> a(m * 2 * n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r) {
            const cplx d = grid.at(r, c);
            const double first = (r % 2 == 0) ? d.real() : d.imag();
            const double second = (r % 2 == 0) ? d.imag() : d.real();
            a[r + (2 * c) * m] = first;
            a[r + (2 * c + 1) * m] = second;
        }
    }
    return a;
}

inline FrameGrid oqam_destagger(const std::vector<double>& a, std::size_t m_count,
                                std::size_t n_count) {
    FrameGrid grid(GridDomain::TimeFrequency, m_count, n_count);
    for (std::size_t c = 0; c < n_count; ++c) {
        for (std::size_t r = 0; r < m_count; ++r) {
            const double first = a[r + (2 * c) * m_count];
            const double second = a[r + (2 * c + 1) * m_count];
            grid.at(r, c) = (r % 2 == 0) ? cplx{first, second} : cplx{second, first};
        }
    }
    return grid;
}

/// OQAM/FBMC synthesis: per half-symbol, one M-point IDFT extended
/// periodically under the prototype window, overlap-added at T_u/2 steps.
/// Equivalent to the explicit synthesis-matrix product (kept as a test
/// oracle; this path is the polyphase realization).
inline ComplexSignal fbmc_modulate(const FrameGrid& grid, const WaveformParams& p) {
    p.validate();
    if (p.scheme != Scheme::OqamFbmc) throw ConfigError("fbmc_modulate: scheme must be oqam_fbmc");
    if (grid.m_count() != p.m_count || grid.n_count() != p.n_count)
        throw ShapeError("fbmc_modulate: grid dimensions do not match params");

    const std::size_t m = p.m_count;
    const std::size_t half = m / 2;
    const std::size_t lp = p.prototype_len();
    const std::vector<double> g = detail::unit_energy_prototype(p);
    const std::vector<double> a = oqam_stagger(grid);
    const double root_m = std::sqrt(static_cast<double>(m));

    std::vector<cplx> out(fbmc_signal_len(p), cplx{0.0, 0.0});
    std::vector<cplx> v(m);
    for (std::size_t np = 0; np < 2 * p.n_count; ++np) {
        for (std::size_t r = 0; r < m; ++r)
            v[r] = detail::quarter_turn(r + np) * a[r + np * m];
        const std::vector<cplx> w = ifft_unitary(v);
        const std::size_t start = np * half;
        for (std::size_t tau = 0; tau < lp; ++tau)
            out[start + tau] += g[tau] * root_m * w[tau % m];
    }
    return ComplexSignal(std::move(out), p.sample_rate_hz);
}

/// Analysis filter bank (matched filter, G_ana = G_syn^H) with the phase
/// term compensated: the real part of each entry carries the data estimate,
/// the imaginary part the intrinsic interference.
inline std::vector<cplx> fbmc_matched_filter(const ComplexSignal& signal,
                                             const WaveformParams& p) {
    p.validate();
    if (signal.samples.size() != fbmc_signal_len(p))
        throw ShapeError("fbmc_matched_filter: signal length does not match params");

    const std::size_t m = p.m_count;
    const std::size_t half = m / 2;
    const std::size_t lp = p.prototype_len();
    const std::vector<double> g = detail::unit_energy_prototype(p);
    const double root_m = std::sqrt(static_cast<double>(m));

    std::vector<cplx> z(m * 2 * p.n_count);
    std::vector<cplx> w(m);
    for (std::size_t np = 0; np < 2 * p.n_count; ++np) {
        std::fill(w.begin(), w.end(), cplx{0.0, 0.0});
        const std::size_t start = np * half;
        for (std::size_t tau = 0; tau < lp; ++tau)
            w[tau % m] += g[tau] * signal.samples[start + tau];
        const std::vector<cplx> f = fft_unitary(w);
        for (std::size_t r = 0; r < m; ++r)
            z[r + np * m] = std::conj(detail::quarter_turn(r + np)) * root_m * f[r];
    }
    return z;
}

/// Matched filter + OQAM post-processing (take real parts, recombine the
/// staggered halves back into complex QAM estimates).
inline FrameGrid fbmc_demodulate(const ComplexSignal& signal, const WaveformParams& p) {
    const std::vector<cplx> z = fbmc_matched_filter(signal, p);
    std::vector<double> a(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) a[i] = z[i].real();
    return oqam_destagger(a, p.m_count, p.n_count);
}

}  // namespace terawave

#endif
