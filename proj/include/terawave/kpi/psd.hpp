#ifndef TERAWAVE_KPI_PSD_HPP
#define TERAWAVE_KPI_PSD_HPP

#include <algorithm>

#include "terawave/fft.hpp"
#include "terawave/signal.hpp"

namespace terawave {

enum class PsdWindow { Rectangular, Hann, BlackmanHarris };

namespace detail {

inline std::vector<double> make_window(PsdWindow kind, std::size_t n) {
    std::vector<double> w(n, 1.0);
    switch (kind) {
        case PsdWindow::Rectangular:
            break;
        case PsdWindow::Hann:
            for (std::size_t i = 0; i < n; ++i)
                w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                            static_cast<double>(n - 1));
            break;
        case PsdWindow::BlackmanHarris:
            // 4-term, -92 dB sidelobes; needed to resolve filter-bank OOB floors
            for (std::size_t i = 0; i < n; ++i) {
                const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1);
                w[i] = 0.35875 - 0.48829 * std::cos(x) + 0.14128 * std::cos(2.0 * x) -
                       0.01168 * std::cos(3.0 * x);
            }
            break;
    }
    return w;
}

}  // namespace detail

/// Two-sided PSD estimate, frequencies ascending (fftshifted), dB values.
struct PsdEstimate {
    std::vector<double> freq_hz;
    std::vector<double> psd_db;
    double bin_width_hz = 0.0;

    /// Integral of the linear PSD over frequency (total power).
    double total_power() const {
        double p = 0.0;
        for (double v : psd_db) p += power_from_db(v);
        return p * bin_width_hz;
    }
};

/// Welch-style averaged periodogram. Normalized so the PSD integrates to
/// the time-domain mean power.
inline PsdEstimate psd_estimate(const ComplexSignal& signal, std::size_t segment_len,
                                double overlap_frac = 0.5,
                                PsdWindow window = PsdWindow::Hann) {
    if (segment_len < 8 || segment_len > signal.samples.size())
        throw ConfigError("psd_estimate: segment length must be in [8, signal length]");
    if (overlap_frac < 0.0 || overlap_frac >= 1.0)
        throw ConfigError("psd_estimate: overlap fraction must be in [0, 1)");

    const std::vector<double> w = detail::make_window(window, segment_len);
    double wpow = 0.0;
    for (double v : w) wpow += v * v;

    const std::size_t stride = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(segment_len) *
                                                 (1.0 - overlap_frac))));
    const double fs = signal.sample_rate_hz;

    std::vector<double> acc(segment_len, 0.0);
    std::size_t n_seg = 0;
    for (std::size_t start = 0; start + segment_len <= signal.samples.size(); start += stride) {
        std::vector<cplx> seg(segment_len);
        for (std::size_t i = 0; i < segment_len; ++i)
            seg[i] = signal.samples[start + i] * w[i];
        seg = fft_unitary(std::move(seg));  // unitary: |X|^2 sums to windowed energy
        for (std::size_t i = 0; i < segment_len; ++i)
            acc[i] += std::norm(seg[i]) * static_cast<double>(segment_len);
        ++n_seg;
    }
    if (n_seg == 0) throw ConfigError("psd_estimate: signal shorter than one segment");

    // periodogram scaling: |DFT|^2 / (fs * sum w^2), averaged over segments
    PsdEstimate est;
    est.bin_width_hz = fs / static_cast<double>(segment_len);
    est.freq_hz.resize(segment_len);
    est.psd_db.resize(segment_len);
    const std::size_t half = segment_len / 2;
    for (std::size_t i = 0; i < segment_len; ++i) {
        const std::size_t src = (i + half) % segment_len;  // fftshift
        const double p = acc[src] / (static_cast<double>(n_seg) * fs * wpow);
        est.freq_hz[i] =
            (static_cast<double>(i) - static_cast<double>(half)) * est.bin_width_hz;
        est.psd_db[i] = db_from_power(std::max(p, 1e-300));
    }
    return est;
}

/// Piecewise-linear transmit spectral mask: (frequency offset, level dBr)
/// breakpoints. A symmetric mask is evaluated at |offset|.
struct SpectralMask {
    std::vector<std::pair<double, double>> breakpoints;
    bool symmetric = true;

    void validate() const {
        if (breakpoints.size() < 2) throw ConfigError("SpectralMask: need >= 2 breakpoints");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            if (breakpoints[i].first <= breakpoints[i - 1].first)
                throw ConfigError("SpectralMask: offsets must be strictly increasing");
    }

    double span() const { return breakpoints.back().first; }

    double level_dbr(double offset_hz) const {
        const double x = symmetric ? std::abs(offset_hz) : offset_hz;
        if (x < breakpoints.front().first || x > breakpoints.back().first)
            throw ConfigError("SpectralMask: offset outside mask span");
        for (std::size_t i = 1; i < breakpoints.size(); ++i) {
            if (x <= breakpoints[i].first) {
                const auto& [x0, y0] = breakpoints[i - 1];
                const auto& [x1, y1] = breakpoints[i];
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        return breakpoints.back().second;
    }
};

struct OobReport {
    double worst_margin_db = 0.0;  // min over bins of (mask - psd); >= 0 passes
    double worst_offset_hz = 0.0;
    std::vector<std::size_t> violating_bins;
    double reference_level_db = 0.0;
    bool pass = false;
};

/// Checks a PSD against a mask centered at center_hz. Levels are relative
/// to the peak PSD (dBr). The PSD must not extend past the mask span.
inline OobReport oob_check(const PsdEstimate& psd, const SpectralMask& mask, double center_hz) {
    mask.validate();
    if (psd.freq_hz.empty()) throw ShapeError("oob_check: empty PSD");

    OobReport report;
    report.reference_level_db = *std::max_element(psd.psd_db.begin(), psd.psd_db.end());
    report.worst_margin_db = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < psd.freq_hz.size(); ++i) {
        const double offset = psd.freq_hz[i] - center_hz;
        if (std::abs(offset) > mask.span())
            throw ConfigError("oob_check: PSD span exceeds mask span");
        const double rel = psd.psd_db[i] - report.reference_level_db;
        const double margin = mask.level_dbr(offset) - rel;
        if (margin < report.worst_margin_db) {
            report.worst_margin_db = margin;
            report.worst_offset_hz = offset;
        }
        if (margin < 0.0) report.violating_bins.push_back(i);
    }
    report.pass = report.violating_bins.empty();
    return report;
}

}  // namespace terawave

#endif
