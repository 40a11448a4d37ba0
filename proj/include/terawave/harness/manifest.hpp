#ifndef TERAWAVE_HARNESS_MANIFEST_HPP
#define TERAWAVE_HARNESS_MANIFEST_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "terawave/common.hpp"

namespace terawave {

inline constexpr const char* kVersionString = "terawave 0.1.0";

inline std::uint64_t fnv1a64(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string fnv_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Deterministic CSV assembly: content built in memory (fixed float
/// formatting), checksummed, then written once.
class CsvBuilder {
public:
    explicit CsvBuilder(std::string header) { body_ = std::move(header) + "\n"; }

    void raw(const std::string& line) { body_ += line + "\n"; }

    template <typename... Ts>
    void row(Ts... fields) {
        bool first = true;
        ((append_field(fields, first), first = false), ...);
        body_ += "\n";
    }

    const std::string& content() const { return body_; }

private:
    void append_field(double v, bool first) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        if (!first) body_ += ",";
        body_ += buf;
    }
    void append_field(std::uint64_t v, bool first) {
        if (!first) body_ += ",";
        body_ += std::to_string(v);
    }
    void append_field(std::size_t v, bool first) {
        if (!first) body_ += ",";
        body_ += std::to_string(v);
    }
    void append_field(int v, bool first) {
        if (!first) body_ += ",";
        body_ += std::to_string(v);
    }
    void append_field(const std::string& v, bool first) {
        if (!first) body_ += ",";
        body_ += v;
    }
    void append_field(const char* v, bool first) {
        if (!first) body_ += ",";
        body_ += v;
    }

    std::string body_;
};

/// Run fingerprint: re-running the same config and seed reproduces identical
/// per-file checksums (wall-clock is informational only).
struct RunManifest {
    std::string version = kVersionString;
    std::string experiment;
    std::string config_hash;
    std::uint64_t seed = 0;
    double wall_clock_s = 0.0;
    std::map<std::string, std::string> file_checksums;  // name -> fnv1a64 hex

    std::string to_text() const {
        std::string out;
        out += std::string("version: ") + version + "\n";
        out += "experiment: " + experiment + "\n";
        out += "config_hash: " + config_hash + "\n";
        out += "seed: " + std::to_string(seed) + "\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "wall_clock_s: %.3f\n", wall_clock_s);
        out += buf;
        for (const auto& [name, sum] : file_checksums)
            out += "file: " + name + " fnv1a64=" + sum + "\n";
        return out;
    }
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path.string());
    os << content;
}

}  // namespace terawave

#endif
