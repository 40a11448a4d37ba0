#ifndef TERAWAVE_WAVEFORMS_PARAMS_HPP
#define TERAWAVE_WAVEFORMS_PARAMS_HPP

#include "terawave/common.hpp"

namespace terawave {

enum class Scheme { CpOfdm, ScFde, DftsOfdm, OqamFbmc, Otfs };

enum class SubcarrierMapping { Localized, Distributed };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::CpOfdm: return "cp_ofdm";
        case Scheme::ScFde: return "sc_fde";
        case Scheme::DftsOfdm: return "dfts_ofdm";
        case Scheme::OqamFbmc: return "oqam_fbmc";
        case Scheme::Otfs: return "otfs";
    }
    return "?";
}

inline Scheme scheme_from_name(const std::string& name) {
    if (name == "cp_ofdm") return Scheme::CpOfdm;
    if (name == "sc_fde") return Scheme::ScFde;
    if (name == "dfts_ofdm") return Scheme::DftsOfdm;
    if (name == "oqam_fbmc") return Scheme::OqamFbmc;
    if (name == "otfs") return Scheme::Otfs;
    throw ConfigError("unknown scheme name: " + name);
}

/// Per-scheme numerology. Fields that do not apply to a scheme are ignored
/// by it (spread_len/mapping are DFT-s-OFDM only, overlap is FBMC only).
struct WaveformParams {
    Scheme scheme = Scheme::CpOfdm;
    std::size_t m_count = 0;                                   // subcarriers / block size M
    std::size_t n_count = 1;                                   // symbols per frame N
    std::size_t cp_len = 0;                                    // N_CP
    std::size_t spread_len = 0;                                // M-bar (DFT-s-OFDM)
    SubcarrierMapping mapping = SubcarrierMapping::Localized;  // DFT-s-OFDM
    std::size_t overlap = 4;                                   // O (FBMC)
    double sample_rate_hz = 1.0;                               // Fs = B

    double delta_f_hz() const { return sample_rate_hz / static_cast<double>(m_count); }
    std::size_t prototype_len() const { return overlap * m_count; }

    void validate() const {
        if (m_count < 1) throw ConfigError("WaveformParams: M must be >= 1");
        if (n_count < 1) throw ConfigError("WaveformParams: N must be >= 1");
        if (!(sample_rate_hz > 0.0)) throw ConfigError("WaveformParams: Fs must be > 0");
        switch (scheme) {
            case Scheme::CpOfdm:
            case Scheme::ScFde:
            case Scheme::DftsOfdm:
                if (cp_len >= m_count)
                    throw ConfigError("WaveformParams: cp_len must be < M for CP block schemes");
                break;
            case Scheme::Otfs:
                // one CP per whole M*N frame
                if (cp_len >= m_count * n_count)
                    throw ConfigError("WaveformParams: cp_len must be < M*N for OTFS");
                break;
            case Scheme::OqamFbmc:
                if (m_count % 2 != 0)
                    throw ConfigError("WaveformParams: OQAM staggering requires even M");
                if (overlap < 2) throw ConfigError("WaveformParams: FBMC overlap must be >= 2");
                break;
        }
        if (scheme == Scheme::DftsOfdm) {
            if (spread_len < 1 || spread_len > m_count)
                throw ConfigError("WaveformParams: DFT-s-OFDM requires 1 <= spread_len <= M");
            if (mapping == SubcarrierMapping::Distributed && m_count % spread_len != 0)
                throw ConfigError(
                    "WaveformParams: distributed mapping requires M divisible by spread_len");
        }
    }
};

}  // namespace terawave

#endif
