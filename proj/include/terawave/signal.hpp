#ifndef TERAWAVE_SIGNAL_HPP
#define TERAWAVE_SIGNAL_HPP

#include "terawave/common.hpp"

namespace terawave {

/// Discrete-time complex baseband sample sequence at a fixed sample rate.
struct ComplexSignal {
    std::vector<cplx> samples;
    double sample_rate_hz = 1.0;

    ComplexSignal() = default;
    ComplexSignal(std::vector<cplx> s, double fs) : samples(std::move(s)), sample_rate_hz(fs) {}

    std::size_t size() const { return samples.size(); }

    void validate() const {
        if (samples.empty()) throw ShapeError("ComplexSignal: length must be >= 1");
        if (!(sample_rate_hz > 0.0)) throw ConfigError("ComplexSignal: sample rate must be > 0");
        for (const auto& s : samples)
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw UndefinedInputError("ComplexSignal: non-finite sample");
    }
};

enum class GridDomain { TimeFrequency, DelayDoppler };

/// M x N complex symbol grid, column-major storage (vectorization stacks
/// columns). Tagged with the domain it lives in.
class FrameGrid {
public:
    FrameGrid(GridDomain domain, std::size_t m_count, std::size_t n_count)
        : domain_(domain), m_(m_count), n_(n_count), v_(m_count * n_count, cplx{0.0, 0.0}) {
        if (m_ < 1 || n_ < 1) throw ShapeError("FrameGrid: dimensions must be >= 1");
    }

    FrameGrid(GridDomain domain, std::size_t m_count, std::size_t n_count, std::vector<cplx> values)
        : domain_(domain), m_(m_count), n_(n_count), v_(std::move(values)) {
        if (m_ < 1 || n_ < 1) throw ShapeError("FrameGrid: dimensions must be >= 1");
        if (v_.size() != m_ * n_)
            throw ShapeError("FrameGrid: value count does not match M x N");
    }

    GridDomain domain() const { return domain_; }
    std::size_t m_count() const { return m_; }
    std::size_t n_count() const { return n_; }

    const cplx& at(std::size_t m, std::size_t n) const { return v_[m + n * m_]; }
    cplx& at(std::size_t m, std::size_t n) { return v_[m + n * m_]; }

    const std::vector<cplx>& values() const { return v_; }
    std::vector<cplx>& values() { return v_; }

    /// Column n as a contiguous copy.
    std::vector<cplx> column(std::size_t n) const {
        return std::vector<cplx>(v_.begin() + static_cast<std::ptrdiff_t>(n * m_),
                                 v_.begin() + static_cast<std::ptrdiff_t>((n + 1) * m_));
    }

    void set_column(std::size_t n, const std::vector<cplx>& col) {
        if (col.size() != m_) throw ShapeError("FrameGrid: column length mismatch");
        std::copy(col.begin(), col.end(), v_.begin() + static_cast<std::ptrdiff_t>(n * m_));
    }

private:
    GridDomain domain_;
    std::size_t m_, n_;
    std::vector<cplx> v_;  // column-major
};

/// Column-stacking vectorization, vec(G).
inline std::vector<cplx> vectorize(const FrameGrid& grid) { return grid.values(); }

inline FrameGrid devectorize(const std::vector<cplx>& vec, std::size_t m_count,
                             std::size_t n_count,
                             GridDomain domain = GridDomain::TimeFrequency) {
    if (vec.size() != m_count * n_count)
        throw ShapeError("devectorize: vector length must equal M x N");
    return FrameGrid(domain, m_count, n_count, vec);
}

/// Time-frequency lattice geometry: subcarrier spacing, symbol period and
/// the dual delay/Doppler resolutions.
struct LatticeSpec {
    double delta_f_hz = 0.0;
    double symbol_period_s = 0.0;
    std::size_t m_count = 0;
    std::size_t n_count = 0;

    double frame_duration_s() const { return static_cast<double>(n_count) * symbol_period_s; }
    double delay_resolution_s() const { return 1.0 / (static_cast<double>(m_count) * delta_f_hz); }
    double doppler_resolution_hz() const {
        return 1.0 / (static_cast<double>(n_count) * symbol_period_s);
    }

    void validate() const {
        if (!(delta_f_hz > 0.0) || !(symbol_period_s > 0.0) || m_count < 1 || n_count < 1)
            throw ConfigError("LatticeSpec: spacing, period and dimensions must be positive");
    }
};

/// Maximum Doppler spread nu_max = v/c * f_c.
inline double max_doppler_hz(double speed_mps, double carrier_hz) {
    if (speed_mps < 0.0) throw ConfigError("max_doppler_hz: speed must be >= 0");
    if (!(carrier_hz > 0.0)) throw ConfigError("max_doppler_hz: carrier must be > 0");
    return speed_mps / kSpeedOfLight * carrier_hz;
}

}  // namespace terawave

#endif
