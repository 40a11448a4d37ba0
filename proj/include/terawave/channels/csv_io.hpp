#ifndef TERAWAVE_CHANNELS_CSV_IO_HPP
#define TERAWAVE_CHANNELS_CSV_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>

#include "terawave/channels/dd.hpp"
#include "terawave/channels/tdl.hpp"

namespace terawave {

// Channel realizations as CSV regression fixtures: tap/path lists with full
// double round-trip precision.

inline void tdl_export_csv(const TdlChannel& ch, std::ostream& os) {
    os << "# tdl tap_spacing_s=" << std::scientific << ch.tap_spacing_s << "\n";
    os << "tap_index,re,im\n";
    char buf[96];
    for (std::size_t i = 0; i < ch.taps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, ch.taps[i].real(),
                      ch.taps[i].imag());
        os << buf;
    }
}

inline TdlChannel tdl_import_csv(std::istream& is) {
    TdlChannel ch;
    ch.tap_spacing_s = 1.0;
    std::string line;
    std::vector<std::pair<std::size_t, cplx>> entries;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("tap_spacing_s=");
            if (pos != std::string::npos) ch.tap_spacing_s = std::stod(line.substr(pos + 14));
            continue;
        }
        if (line.rfind("tap_index", 0) == 0) continue;
        std::size_t idx;
        double re, im;
        if (std::sscanf(line.c_str(), "%zu,%lg,%lg", &idx, &re, &im) == 3)
            entries.emplace_back(idx, cplx{re, im});
    }
    if (entries.empty()) throw ShapeError("tdl_import_csv: no taps found");
    std::size_t n = 0;
    for (const auto& e : entries) n = std::max(n, e.first + 1);
    ch.taps.assign(n, cplx{0.0, 0.0});
    for (const auto& e : entries) ch.taps[e.first] += e.second;
    return ch;
}

inline void dd_export_csv(const DdChannel& ch, std::ostream& os) {
    os << "delay_idx,doppler_idx,re,im\n";
    char buf[128];
    for (const auto& p : ch.paths()) {
        std::snprintf(buf, sizeof buf, "%zu,%lld,%.17g,%.17g\n", p.delay_idx, p.doppler_idx,
                      p.gain.real(), p.gain.imag());
        os << buf;
    }
}

inline DdChannel dd_import_csv(std::istream& is) {
    std::string line;
    std::vector<DdPath> paths;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("delay_idx", 0) == 0) continue;
        std::size_t l;
        long long k;
        double re, im;
        if (std::sscanf(line.c_str(), "%zu,%lld,%lg,%lg", &l, &k, &re, &im) == 4)
            paths.push_back(DdPath{cplx{re, im}, l, k});
    }
    if (paths.empty()) throw ShapeError("dd_import_csv: no paths found");
    return DdChannel(std::move(paths));
}

}  // namespace terawave

#endif
