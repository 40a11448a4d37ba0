#ifndef TERAWAVE_RANDOM_HPP
#define TERAWAVE_RANDOM_HPP

#include <random>

#include "terawave/common.hpp"

namespace terawave {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Stable task-id mixer used for per-trial stream ids: worker scheduling
// can never change which draws a trial sees.
inline std::uint64_t mix_stream_id(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                                   std::uint64_t d = 0) {
    std::uint64_t h = detail::splitmix64(a);
    h = detail::splitmix64(h ^ detail::splitmix64(b + 0x632BE59BD9B4E019ull));
    h = detail::splitmix64(h ^ detail::splitmix64(c + 0x9E6C63D0876A9F4Bull));
    h = detail::splitmix64(h ^ detail::splitmix64(d + 0xD1B54A32D192ED03ull));
    return h;
}

/// Seeded, forkable random stream. Identical (seed, stream_id) reproduce
/// identical draws; distinct stream_ids are decorrelated by seed mixing.
/// All distributions are generated in-house (Box-Muller for normals) so the
/// byte stream does not depend on the standard library's distribution
/// implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id),
          engine_(detail::splitmix64(detail::splitmix64(seed) ^
                                     detail::splitmix64(stream_id ^ 0xA5A5A5A55A5A5A5Aull))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Independent child stream; deterministic function of (seed, stream_id, tag).
    RandomStream fork(std::uint64_t tag) const {
        return RandomStream(seed_, mix_stream_id(stream_id_, tag ^ 0xF00DFEEDull));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Standard normal (Box-Muller, pairwise, cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 2.0 * kPi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    /// Circular complex normal CN(0, 1): variance 1/2 per real dimension.
    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return cplx{re, im} * std::sqrt(0.5);
    }

    /// Exponential with given rate (mean 1/rate).
    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    std::uint64_t uniform_int(std::uint64_t bound) {
        // rejection sampling; unbiased and engine-order deterministic
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace terawave

#endif
