#ifndef TERAWAVE_KPI_PAPR_HPP
#define TERAWAVE_KPI_PAPR_HPP

#include <algorithm>

#include "terawave/signal.hpp"
#include "terawave/waveforms/params.hpp"

namespace terawave {

/// PAPR over the first observation_len samples: max |x|^2 / mean |x|^2
/// (linear ratio).
inline double papr(const ComplexSignal& signal, std::size_t observation_len) {
    if (observation_len < 1 || observation_len > signal.samples.size())
        throw ShapeError("papr: observation window must fit inside the signal");
    double peak = 0.0, acc = 0.0;
    for (std::size_t u = 0; u < observation_len; ++u) {
        const double p = std::norm(signal.samples[u]);
        peak = std::max(peak, p);
        acc += p;
    }
    if (acc <= 0.0) throw UndefinedInputError("papr: zero-energy observation window");
    return peak / (acc / static_cast<double>(observation_len));
}

/// PAPR of each length-window slice starting at `offset`, advancing by
/// `stride` (defaults to non-overlapping windows).
inline std::vector<double> papr_per_window(const ComplexSignal& signal, std::size_t window,
                                           std::size_t offset = 0, std::size_t stride = 0) {
    if (stride == 0) stride = window;
    std::vector<double> out;
    for (std::size_t start = offset; start + window <= signal.samples.size(); start += stride) {
        double peak = 0.0, acc = 0.0;
        for (std::size_t u = start; u < start + window; ++u) {
            const double p = std::norm(signal.samples[u]);
            peak = std::max(peak, p);
            acc += p;
        }
        if (acc <= 0.0) throw UndefinedInputError("papr_per_window: zero-energy window");
        out.push_back(peak / (acc / static_cast<double>(window)));
    }
    return out;
}

/// Complementary CDF: thresholds sorted ascending, probabilities
/// non-increasing, P(PAPR > threshold).
struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> probabilities;

    void validate() const {
        if (thresholds_db.size() != probabilities.size())
            throw ShapeError("CcdfCurve: size mismatch");
        for (std::size_t i = 1; i < thresholds_db.size(); ++i) {
            if (thresholds_db[i] <= thresholds_db[i - 1])
                throw ConfigError("CcdfCurve: thresholds must be strictly increasing");
            if (probabilities[i] > probabilities[i - 1] + 1e-15)
                throw ConfigError("CcdfCurve: probabilities must be non-increasing");
        }
        for (double p : probabilities)
            if (p < 0.0 || p > 1.0) throw ConfigError("CcdfCurve: probability outside [0,1]");
    }

    /// Threshold (dB) where the curve crosses probability p, by linear
    /// interpolation in (threshold_db, log10 p).
    double threshold_at(double p) const {
        for (std::size_t i = 1; i < probabilities.size(); ++i) {
            if (probabilities[i] <= p && probabilities[i - 1] > p) {
                const double p0 = std::log10(std::max(probabilities[i - 1], 1e-300));
                const double p1 = std::log10(std::max(probabilities[i], 1e-300));
                const double t = (std::log10(p) - p0) / (p1 - p0);
                return thresholds_db[i - 1] + t * (thresholds_db[i] - thresholds_db[i - 1]);
            }
        }
        throw UndefinedInputError("CcdfCurve: probability not bracketed by the curve");
    }
};

inline CcdfCurve ccdf_from_samples(const std::vector<double>& papr_linear,
                                   const std::vector<double>& thresholds_db) {
    if (papr_linear.empty()) throw ShapeError("ccdf_from_samples: no samples");
    std::vector<double> sorted_db(papr_linear.size());
    for (std::size_t i = 0; i < papr_linear.size(); ++i) sorted_db[i] = db_from_power(papr_linear[i]);
    std::sort(sorted_db.begin(), sorted_db.end());

    CcdfCurve curve;
    curve.thresholds_db = thresholds_db;
    curve.probabilities.resize(thresholds_db.size());
    const double n = static_cast<double>(sorted_db.size());
    for (std::size_t i = 0; i < thresholds_db.size(); ++i) {
        const auto it = std::upper_bound(sorted_db.begin(), sorted_db.end(), thresholds_db[i]);
        curve.probabilities[i] = static_cast<double>(sorted_db.end() - it) / n;
    }
    curve.validate();
    return curve;
}

/// Closed-form PAPR CCDF: 1 - (1 - e^-gamma)^M for CP-OFDM; the OTFS
/// high-N approximation replaces the exponent by M*N.
inline CcdfCurve papr_ccdf_theory(Scheme scheme, std::size_t m_count, std::size_t n_count,
                                  const std::vector<double>& thresholds_db) {
    double exponent;
    switch (scheme) {
        case Scheme::CpOfdm: exponent = static_cast<double>(m_count); break;
        case Scheme::Otfs: exponent = static_cast<double>(m_count * n_count); break;
        default:
            throw ConfigError("papr_ccdf_theory: closed form available for cp_ofdm and otfs only");
    }
    CcdfCurve curve;
    curve.thresholds_db = thresholds_db;
    curve.probabilities.resize(thresholds_db.size());
    for (std::size_t i = 0; i < thresholds_db.size(); ++i) {
        const double gamma = power_from_db(thresholds_db[i]);
        curve.probabilities[i] = 1.0 - std::pow(1.0 - std::exp(-gamma), exponent);
    }
    curve.validate();
    return curve;
}

/// Hard OTFS ceiling: max PAPR grows as 10 log10(N).
inline double papr_max_otfs_db(std::size_t n_count) {
    if (n_count < 1) throw ConfigError("papr_max_otfs_db: N must be >= 1");
    return 10.0 * std::log10(static_cast<double>(n_count));
}

}  // namespace terawave

#endif
