#ifndef TERAWAVE_COMMON_HPP
#define TERAWAVE_COMMON_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace terawave {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

// Error taxonomy: configuration vs. input-shape vs. numerical problems are
// reported as distinct types so callers (and tests) can tell them apart.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularityError : std::runtime_error {
    explicit SingularityError(const std::string& what) : std::runtime_error(what) {}
};

struct UndefinedInputError : std::invalid_argument {
    explicit UndefinedInputError(const std::string& what) : std::invalid_argument(what) {}
};

inline double db_from_power(double p) { return 10.0 * std::log10(p); }
inline double power_from_db(double db) { return std::pow(10.0, db / 10.0); }

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t ilog2(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << (k + 1)) <= n) ++k;
    return k;
}

inline double energy(const std::vector<cplx>& v) {
    double e = 0.0;
    for (const auto& s : v) e += std::norm(s);
    return e;
}

inline double mean_power(const std::vector<cplx>& v) {
    return v.empty() ? 0.0 : energy(v) / static_cast<double>(v.size());
}

}  // namespace terawave

#endif
