#ifndef TERAWAVE_QAM_HPP
#define TERAWAVE_QAM_HPP

#include <limits>

#include "terawave/common.hpp"

namespace terawave {

/// Square Gray-labeled QAM constellation with unit average symbol energy.
///
/// The bit map is a fixed convention (the literature never pins one down):
/// the first half of the bits selects the I level, the second half the Q
/// level, each half through a reflected Gray ladder whose all-zeros group
/// maps to the innermost positive level. For 4-QAM bits 00 sit at
/// (+1+j)/sqrt(2).
class QamConstellation {
public:
    static QamConstellation make(unsigned order) {
        if (order != 4 && order != 16 && order != 64)
            throw ConfigError("QamConstellation: order must be one of {4, 16, 64}");
        QamConstellation c;
        c.order_ = order;
        c.bits_per_symbol_ = static_cast<unsigned>(ilog2(order));
        const unsigned half = c.bits_per_symbol_ / 2;
        const unsigned levels = 1u << half;
        // per-axis normalization: E per axis = (L^2 - 1)/3, total Es = 2(L^2-1)/3
        const double scale = std::sqrt(3.0 / (2.0 * (static_cast<double>(levels) * levels - 1.0)));
        c.points_.resize(order);
        for (unsigned label = 0; label < order; ++label) {
            const unsigned gi = label >> half;           // first half of bits -> I
            const unsigned gq = label & (levels - 1u);   // second half -> Q
            c.points_[label] = cplx{gray_amplitude(gi, half), gray_amplitude(gq, half)} * scale;
        }
        return c;
    }

    unsigned order() const { return order_; }
    unsigned bits_per_symbol() const { return bits_per_symbol_; }
    const std::vector<cplx>& points() const { return points_; }
    const cplx& point(unsigned label) const { return points_[label]; }

    double average_energy() const {
        double e = 0.0;
        for (const auto& p : points_) e += std::norm(p);
        return e / static_cast<double>(order_);
    }

    /// Minimum-distance hard decision; ties break to the lowest label.
    unsigned slice(const cplx& sample) const {
        unsigned best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (unsigned i = 0; i < order_; ++i) {
            const double d = std::norm(sample - points_[i]);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

private:
    // Gray-coded bits -> PAM amplitude in {+-1, +-3, ...}; bit 0 -> positive.
    static double gray_amplitude(unsigned gray_bits, unsigned n_bits) {
        double a = 1.0 - 2.0 * static_cast<double>((gray_bits >> (n_bits - 1)) & 1u);
        for (unsigned j = 1; j < n_bits; ++j) {
            const unsigned b = (gray_bits >> (n_bits - 1 - j)) & 1u;
            a = (1.0 - 2.0 * static_cast<double>(b)) * (static_cast<double>(1u << j) - a);
        }
        return a;
    }

    unsigned order_ = 0;
    unsigned bits_per_symbol_ = 0;
    std::vector<cplx> points_;
};

/// Bits (one per element, values 0/1, MSB of each group first) to symbols.
inline std::vector<cplx> qam_modulate(const std::vector<uint8_t>& bits,
                                      const QamConstellation& constellation) {
    const unsigned bps = constellation.bits_per_symbol();
    if (bits.size() % bps != 0)
        throw ShapeError("qam_modulate: bit count must be divisible by bits per symbol");
    std::vector<cplx> out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        unsigned label = 0;
        for (unsigned j = 0; j < bps; ++j) label = (label << 1) | (bits[i + j] & 1u);
        out.push_back(constellation.point(label));
    }
    return out;
}

inline std::vector<uint8_t> qam_demodulate(const std::vector<cplx>& symbols,
                                           const QamConstellation& constellation) {
    const unsigned bps = constellation.bits_per_symbol();
    std::vector<uint8_t> out;
    out.reserve(symbols.size() * bps);
    for (const auto& s : symbols) {
        const unsigned label = constellation.slice(s);
        for (unsigned j = 0; j < bps; ++j)
            out.push_back(static_cast<uint8_t>((label >> (bps - 1 - j)) & 1u));
    }
    return out;
}

}  // namespace terawave

#endif
