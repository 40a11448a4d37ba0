#ifndef TERAWAVE_EQ_EQUALIZERS_HPP
#define TERAWAVE_EQ_EQUALIZERS_HPP

#include <Eigen/Dense>

#include "terawave/channels/dd.hpp"
#include "terawave/signal.hpp"

namespace terawave {

enum class EqKind { Zf, Mmse };

/// Linear equalizer choice. MMSE regularizes by noise_power / signal_power;
/// ZF ignores both.
struct EqualizerSpec {
    EqKind kind = EqKind::Zf;
    double noise_power = 0.0;
    double signal_power = 1.0;

    double lambda() const {
        if (kind == EqKind::Zf) return 0.0;
        if (!(signal_power > 0.0)) throw ConfigError("EqualizerSpec: signal power must be > 0");
        if (noise_power < 0.0) throw ConfigError("EqualizerSpec: noise power must be >= 0");
        return noise_power / signal_power;
    }
};

/// Per-bin single-tap equalizer for diagonalized (circulant) channels:
/// ZF y/h, MMSE h* y / (|h|^2 + sigma^2/P).
inline std::vector<cplx> single_tap_equalize(const std::vector<cplx>& freq_symbols,
                                             const std::vector<cplx>& freq_response,
                                             const EqualizerSpec& spec) {
    if (freq_symbols.size() != freq_response.size())
        throw ShapeError("single_tap_equalize: symbol/response length mismatch");
    const double lambda = spec.lambda();
    std::vector<cplx> out(freq_symbols.size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        const cplx h = freq_response[m];
        if (spec.kind == EqKind::Zf) {
            if (std::abs(h) < 1e-12)
                throw SingularityError("single_tap_equalize: zero response at bin " +
                                       std::to_string(m));
            out[m] = freq_symbols[m] / h;
        } else {
            out[m] = std::conj(h) * freq_symbols[m] / (std::norm(h) + lambda);
        }
    }
    return out;
}

/// General linear equalizer through a factorization (never an explicit
/// inverse): ZF solves the least-squares problem, MMSE solves
/// (H^H H + lambda I) x = H^H y by Cholesky.
inline std::vector<cplx> matrix_equalize(const std::vector<cplx>& y, const Eigen::MatrixXcd& h,
                                         const EqualizerSpec& spec) {
    if (static_cast<Eigen::Index>(y.size()) != h.rows())
        throw ShapeError("matrix_equalize: observation length must match rows of H");
    Eigen::VectorXcd yv(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i) yv(i) = y[static_cast<std::size_t>(i)];

    Eigen::VectorXcd x;
    if (spec.kind == EqKind::Zf) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(h);
        if (qr.rank() < h.cols())
            throw SingularityError("matrix_equalize: rank-deficient channel for ZF");
        x = qr.solve(yv);
    } else {
        const double lambda = spec.lambda();
        Eigen::MatrixXcd gram = h.adjoint() * h;
        gram.diagonal().array() += cplx{lambda, 0.0};
        Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
        if (ldlt.info() != Eigen::Success)
            throw SingularityError("matrix_equalize: MMSE normal equations not positive definite");
        x = ldlt.solve(h.adjoint() * yv);
    }
    std::vector<cplx> out(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = x(i);
    return out;
}

namespace detail {

inline double vec_norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

inline cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Conjugate gradient on the regularized normal equations
// (A^H A + lambda I) x = rhs with matrix-free A given by the DD channel.
// Deterministic; used above the dense-solve size threshold.
inline std::vector<cplx> cg_normal_equations(const std::vector<cplx>& rhs, const DdChannel& ch,
                                             std::size_t m_count, std::size_t n_count,
                                             double lambda, double tol, std::size_t max_iter) {
    const std::size_t mn = rhs.size();
    auto apply_normal = [&](const std::vector<cplx>& v) {
        std::vector<cplx> av = dd_effective_apply(v, ch, m_count, n_count);
        std::vector<cplx> out = dd_effective_apply_adjoint(av, ch, m_count, n_count);
        if (lambda != 0.0)
            for (std::size_t i = 0; i < mn; ++i) out[i] += lambda * v[i];
        return out;
    };

    std::vector<cplx> x(mn, cplx{0.0, 0.0});
    std::vector<cplx> r = rhs;  // residual for x = 0
    std::vector<cplx> p = r;
    double rs = vec_norm2(r);
    const double stop = tol * tol * vec_norm2(rhs);
    for (std::size_t it = 0; it < max_iter && rs > stop; ++it) {
        const std::vector<cplx> ap = apply_normal(p);
        const cplx denom = vec_dot(p, ap);
        if (std::abs(denom) < 1e-300)
            throw SingularityError("otfs_equalize: conjugate gradient breakdown");
        const cplx alpha = rs / denom;
        for (std::size_t i = 0; i < mn; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        const double rs_new = vec_norm2(r);
        const double beta = rs_new / rs;
        for (std::size_t i = 0; i < mn; ++i) p[i] = r[i] + beta * p[i];
        rs = rs_new;
    }
    return x;
}

}  // namespace detail

/// OTFS equalizer against a dense effective channel (small lattices).
inline std::vector<cplx> otfs_equalize(const std::vector<cplx>& y_dd,
                                       const Eigen::MatrixXcd& h_eff, const EqualizerSpec& spec) {
    return matrix_equalize(y_dd, h_eff, spec);
}

/// OTFS equalizer given the sparse DD channel itself. Three regimes:
///  - all Doppler indices zero: the payload channel is circulant, solved
///    exactly in the MN-point DFT domain;
///  - MN small enough for a dense factorization: dense solve;
///  - otherwise: matrix-free conjugate gradient on the normal equations.
inline std::vector<cplx> otfs_equalize(const std::vector<cplx>& y_dd, const DdChannel& ch,
                                       std::size_t m_count, std::size_t n_count,
                                       const EqualizerSpec& spec,
                                       std::size_t dense_limit = 1024) {
    const std::size_t mn = m_count * n_count;
    if (y_dd.size() != mn) throw ShapeError("otfs_equalize: input length must be M*N");
    ch.check_lattice(m_count, n_count);
    const double lambda = spec.lambda();

    if (ch.time_invariant()) {
        // payload-domain circulant: eigenvalues are the MN-point DFT of taps
        std::vector<cplx> taps(mn, cplx{0.0, 0.0});
        for (const auto& p : ch.paths()) taps[p.delay_idx] += p.gain;
        const std::vector<cplx> eig = dft_unnormalized(std::move(taps));

        std::vector<cplx> v = y_dd;
        detail::transform_rows(v, m_count, n_count, /*inverse=*/true);  // back to payload domain
        v = fft_unitary(std::move(v));
        for (std::size_t i = 0; i < mn; ++i) {
            const cplx h = eig[i];
            if (spec.kind == EqKind::Zf) {
                if (std::abs(h) < 1e-12)
                    throw SingularityError("otfs_equalize: zero circulant eigenvalue at bin " +
                                           std::to_string(i));
                v[i] /= h;
            } else {
                v[i] = std::conj(h) * v[i] / (std::norm(h) + lambda);
            }
        }
        v = ifft_unitary(std::move(v));
        detail::transform_rows(v, m_count, n_count, /*inverse=*/false);
        return v;
    }

    if (mn <= dense_limit)
        return matrix_equalize(y_dd, dd_effective_channel(ch, m_count, n_count), spec);

    std::vector<cplx> rhs = dd_effective_apply_adjoint(y_dd, ch, m_count, n_count);
    return detail::cg_normal_equations(rhs, ch, m_count, n_count, lambda, 1e-10, 4 * mn);
}

}  // namespace terawave

#endif
