#ifndef TERAWAVE_KPI_BER_HPP
#define TERAWAVE_KPI_BER_HPP

#include "terawave/common.hpp"

namespace terawave {

/// Pooled error/bit counts for one operating point; a mergeable monoid so
/// trial order cannot affect results.
struct ErrorCount {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;

    ErrorCount& merge(const ErrorCount& other) {
        errors += other.errors;
        bits += other.bits;
        return *this;
    }
};

struct BerPoint {
    double snr_db = 0.0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
};

/// Wilson score interval at 95% confidence.
inline BerPoint ber_aggregate(double snr_db, const ErrorCount& count) {
    if (count.bits == 0) throw ConfigError("ber_aggregate: zero bits observed");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(count.bits);
    const double p = static_cast<double>(count.errors) / n;
    const double z2n = z * z / n;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    BerPoint pt;
    pt.snr_db = snr_db;
    pt.ber = p;
    pt.ci_low = std::max(0.0, center - half);
    pt.ci_high = std::min(1.0, center + half);
    pt.bits = count.bits;
    pt.errors = count.errors;
    return pt;
}

inline std::uint64_t count_bit_errors(const std::vector<uint8_t>& a,
                                      const std::vector<uint8_t>& b) {
    if (a.size() != b.size()) throw ShapeError("count_bit_errors: length mismatch");
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += (a[i] != b[i]) ? 1u : 0u;
    return e;
}

}  // namespace terawave

#endif
