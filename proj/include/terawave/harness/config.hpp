#ifndef TERAWAVE_HARNESS_CONFIG_HPP
#define TERAWAVE_HARNESS_CONFIG_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>

#include <json.hpp>

#include "terawave/harness/chains.hpp"
#include "terawave/impairments/phase_noise.hpp"
#include "terawave/kpi/psd.hpp"

namespace terawave {

enum class ExperimentKind {
    KpiTables,
    PaprCcdf,
    PsdOob,
    BerAwgnPhn,
    BerBeamSplit,
    BerDoublySelective
};

inline const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::KpiTables: return "kpi_tables";
        case ExperimentKind::PaprCcdf: return "papr_ccdf";
        case ExperimentKind::PsdOob: return "psd_oob";
        case ExperimentKind::BerAwgnPhn: return "ber_awgn_phn";
        case ExperimentKind::BerBeamSplit: return "ber_beam_split";
        case ExperimentKind::BerDoublySelective: return "ber_doubly_selective";
    }
    return "?";
}

inline ExperimentKind experiment_from_name(const std::string& name) {
    if (name == "kpi_tables") return ExperimentKind::KpiTables;
    if (name == "papr_ccdf") return ExperimentKind::PaprCcdf;
    if (name == "psd_oob") return ExperimentKind::PsdOob;
    if (name == "ber_awgn_phn") return ExperimentKind::BerAwgnPhn;
    if (name == "ber_beam_split") return ExperimentKind::BerBeamSplit;
    if (name == "ber_doubly_selective") return ExperimentKind::BerDoublySelective;
    throw ConfigError("experiment: unknown kind '" + name + "'");
}

enum class SnrUnit { EsN0, EbN0 };

struct SnrSweep {
    std::vector<double> points_db;
    SnrUnit unit = SnrUnit::EsN0;

    /// Slicer-referred noise power for a sweep point given bits/symbol.
    double noise_power(double snr_db, unsigned bits_per_symbol) const {
        const double es_n0_db =
            unit == SnrUnit::EsN0
                ? snr_db
                : snr_db + db_from_power(static_cast<double>(bits_per_symbol));
        return power_from_db(-es_n0_db);
    }
};

struct PaprSettings {
    std::size_t num_windows = 10000;
    double threshold_min_db = 0.0;
    double threshold_max_db = 13.0;
    double threshold_step_db = 0.1;
    bool include_cp = false;
    bool pulse_shaping = false;
    double rolloff = 0.0;
    std::size_t span_symbols = 6;
    std::size_t oversample = 4;

    std::vector<double> thresholds() const {
        std::vector<double> t;
        for (double v = threshold_min_db; v <= threshold_max_db + 1e-9; v += threshold_step_db)
            t.push_back(v);
        return t;
    }
};

struct PsdSettings {
    std::size_t segment_len = 2048;
    double overlap_frac = 0.5;
    PsdWindow window = PsdWindow::BlackmanHarris;
    std::size_t oversampling = 4;
    std::size_t num_frames = 20;
    std::string mask_csv;  // resolved absolute path
    double channel_spacing_hz = 0.0;
    double center_hz = 0.0;
    std::size_t users = 1;
};

struct PhnSettings {
    PhnModel model = PhnModel::Gaussian;
    bool direct_sigma = false;  // sigma_g2 given instead of (K0, f_cor)
    double k0_dbc_per_hz = -110.0;
    double corner_hz = 1e6;
    double sigma_g2 = 0.0;
    bool cpe_removal = false;

    PhnParams params(double bandwidth_hz) const {
        if (direct_sigma) {
            PhnParams p;
            p.k0 = sigma_g2 / bandwidth_hz;  // sigma_g^2 = K0 * B
            p.k2 = 0.0;
            p.bandwidth_hz = bandwidth_hz;
            p.model = model;
            return p;
        }
        return PhnParams::from_dbc(k0_dbc_per_hz, corner_hz, bandwidth_hz, model);
    }
};

struct ClusterRaySettings {
    ClusterRayParams params;
    std::optional<double> k_factor_db;
    double max_delay_s = 0.0;
};

struct BeamSplitSettings {
    bool enabled = true;
    std::size_t ae_count_tx = 32;
    std::size_t ae_count_rx = 32;
    double f_c_hz = 0.325e12;
    double steer_angle_rad = 0.0;
};

struct MobilitySettings {
    double speed_mps = 0.0;
    double carrier_hz = 0.0;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::KpiTables;
    std::uint64_t seed = 0;
    unsigned workers = 0;  // 0 = hardware concurrency
    std::string output_dir;
    double sample_rate_hz = 0.0;
    std::vector<SchemeSpec> schemes;
    SnrSweep snr;
    std::size_t trials = 0;
    PaprSettings papr;
    PsdSettings psd;
    PhnSettings phn;
    ClusterRaySettings channel;
    BeamSplitSettings beam;
    MobilitySettings mobility;
    std::string canonical_json;

    static ExperimentConfig from_json(const nlohmann::json& j,
                                      const std::filesystem::path& base_dir);
    static ExperimentConfig from_file(const std::filesystem::path& path);
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config error at " + path + ": " + msg);
}

inline void check_keys(const json& j, const std::string& path,
                       const std::set<std::string>& allowed) {
    if (!j.is_object()) config_fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.count(key)) config_fail(path + "/" + key, "unknown key");
    }
}

template <typename T>
inline T require(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) config_fail(path + "/" + key, "missing required key");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        config_fail(path + "/" + key, std::string("bad type: ") + e.what());
    }
}

template <typename T>
inline T get_or(const json& j, const std::string& path, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        config_fail(path + "/" + key, std::string("bad type: ") + e.what());
    }
}

inline SchemeSpec parse_scheme(const json& j, const std::string& path, double sample_rate_hz) {
    check_keys(j, path,
               {"scheme", "label", "m", "n", "cp_len", "spread_len", "mapping", "overlap",
                "qam_order"});
    SchemeSpec s;
    s.params.scheme = scheme_from_name(require<std::string>(j, path, "scheme"));
    s.params.m_count = require<std::size_t>(j, path, "m");
    s.params.n_count = get_or<std::size_t>(j, path, "n", 1);
    s.params.cp_len = get_or<std::size_t>(j, path, "cp_len", 0);
    s.params.overlap = get_or<std::size_t>(j, path, "overlap", 4);
    s.params.sample_rate_hz = sample_rate_hz;
    if (s.params.scheme == Scheme::DftsOfdm) {
        s.params.spread_len = require<std::size_t>(j, path, "spread_len");
        const std::string mapping = get_or<std::string>(j, path, "mapping", "localized");
        if (mapping == "localized")
            s.params.mapping = SubcarrierMapping::Localized;
        else if (mapping == "distributed")
            s.params.mapping = SubcarrierMapping::Distributed;
        else
            config_fail(path + "/mapping", "must be 'localized' or 'distributed'");
    } else if (j.contains("spread_len") || j.contains("mapping")) {
        config_fail(path, "spread_len/mapping apply to dfts_ofdm only");
    }
    const unsigned order = require<unsigned>(j, path, "qam_order");
    s.constellation = QamConstellation::make(order);
    s.label = get_or<std::string>(j, path, "label", scheme_name(s.params.scheme));
    try {
        s.params.validate();
    } catch (const ConfigError& e) {
        config_fail(path, e.what());
    }
    return s;
}

inline SnrSweep parse_snr(const json& j, const std::string& path) {
    check_keys(j, path, {"start_db", "stop_db", "step_db", "unit"});
    const double start = require<double>(j, path, "start_db");
    const double stop = require<double>(j, path, "stop_db");
    const double step = require<double>(j, path, "step_db");
    if (!(step > 0.0)) config_fail(path + "/step_db", "must be > 0");
    if (stop < start) config_fail(path, "stop_db must be >= start_db");
    SnrSweep sweep;
    for (double v = start; v <= stop + 1e-9; v += step) sweep.points_db.push_back(v);
    const std::string unit = get_or<std::string>(j, path, "unit", "es_n0");
    if (unit == "es_n0")
        sweep.unit = SnrUnit::EsN0;
    else if (unit == "eb_n0")
        sweep.unit = SnrUnit::EbN0;
    else
        config_fail(path + "/unit", "must be 'es_n0' or 'eb_n0'");
    return sweep;
}

inline PhnSettings parse_phn(const json& j, const std::string& path) {
    check_keys(j, path, {"model", "k0_dbc_per_hz", "corner_hz", "sigma_g2", "cpe_removal"});
    PhnSettings s;
    const std::string model = require<std::string>(j, path, "model");
    if (model == "gaussian")
        s.model = PhnModel::Gaussian;
    else if (model == "wiener")
        s.model = PhnModel::Wiener;
    else if (model == "combined")
        s.model = PhnModel::Combined;
    else
        config_fail(path + "/model", "must be gaussian, wiener or combined");
    if (j.contains("sigma_g2")) {
        if (j.contains("k0_dbc_per_hz") || j.contains("corner_hz"))
            config_fail(path, "give either sigma_g2 or (k0_dbc_per_hz, corner_hz), not both");
        s.direct_sigma = true;
        s.sigma_g2 = require<double>(j, path, "sigma_g2");
        if (s.sigma_g2 < 0.0) config_fail(path + "/sigma_g2", "must be >= 0");
    } else {
        s.k0_dbc_per_hz = require<double>(j, path, "k0_dbc_per_hz");
        s.corner_hz = get_or<double>(j, path, "corner_hz", 0.0);
    }
    s.cpe_removal = get_or<bool>(j, path, "cpe_removal", false);
    return s;
}

inline ClusterRaySettings parse_channel(const json& j, const std::string& path) {
    check_keys(j, path,
               {"cluster_rate_per_ns", "ray_rate_per_ns", "cluster_decay_ns", "ray_decay_ns",
                "absorption_per_m", "distance_m", "k_factor_db", "max_delay_ns"});
    ClusterRaySettings s;
    s.params.cluster_rate_hz = require<double>(j, path, "cluster_rate_per_ns") * 1e9;
    s.params.ray_rate_hz = require<double>(j, path, "ray_rate_per_ns") * 1e9;
    s.params.cluster_decay_s = require<double>(j, path, "cluster_decay_ns") * 1e-9;
    s.params.ray_decay_s = require<double>(j, path, "ray_decay_ns") * 1e-9;
    s.params.absorption_coeff_per_m = get_or<double>(j, path, "absorption_per_m", 0.0);
    s.params.distance_m = get_or<double>(j, path, "distance_m", 1.0);
    if (j.contains("k_factor_db")) s.k_factor_db = require<double>(j, path, "k_factor_db");
    s.max_delay_s = get_or<double>(j, path, "max_delay_ns", 0.0) * 1e-9;
    try {
        s.params.validate();
    } catch (const ConfigError& e) {
        config_fail(path, e.what());
    }
    return s;
}

}  // namespace detail

inline ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j,
                                                    const std::filesystem::path& base_dir) {
    using detail::check_keys;
    using detail::config_fail;
    using detail::get_or;
    using detail::require;
    const std::string root = "$";

    check_keys(j, root,
               {"experiment", "seed", "output_dir", "workers", "sample_rate_hz", "schemes", "snr",
                "trials", "papr", "psd", "phase_noise", "channel", "beam_split", "mobility"});

    ExperimentConfig cfg;
    cfg.kind = experiment_from_name(require<std::string>(j, root, "experiment"));
    cfg.seed = require<std::uint64_t>(j, root, "seed");
    cfg.workers = get_or<unsigned>(j, root, "workers", 0);
    cfg.output_dir = get_or<std::string>(j, root, "output_dir", "");
    cfg.sample_rate_hz = require<double>(j, root, "sample_rate_hz");
    if (!(cfg.sample_rate_hz > 0.0)) config_fail(root + "/sample_rate_hz", "must be > 0");

    if (!j.contains("schemes") || !j.at("schemes").is_array() || j.at("schemes").empty())
        config_fail(root + "/schemes", "must be a non-empty array");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < j.at("schemes").size(); ++i) {
        cfg.schemes.push_back(detail::parse_scheme(
            j.at("schemes")[i], root + "/schemes/" + std::to_string(i), cfg.sample_rate_hz));
        if (!labels.insert(cfg.schemes.back().label).second)
            config_fail(root + "/schemes/" + std::to_string(i),
                        "duplicate label '" + cfg.schemes.back().label + "'");
    }

    const bool is_ber = cfg.kind == ExperimentKind::BerAwgnPhn ||
                        cfg.kind == ExperimentKind::BerBeamSplit ||
                        cfg.kind == ExperimentKind::BerDoublySelective;
    if (is_ber) {
        if (!j.contains("snr")) config_fail(root + "/snr", "missing required key");
        cfg.snr = detail::parse_snr(j.at("snr"), root + "/snr");
        cfg.trials = require<std::size_t>(j, root, "trials");
        if (cfg.trials < 1) config_fail(root + "/trials", "must be >= 1");
    } else if (j.contains("snr") || j.contains("trials")) {
        config_fail(root, "snr/trials apply to BER experiments only");
    }

    switch (cfg.kind) {
        case ExperimentKind::KpiTables:
            break;
        case ExperimentKind::PaprCcdf: {
            if (!j.contains("papr")) config_fail(root + "/papr", "missing required key");
            const auto& jp = j.at("papr");
            check_keys(jp, root + "/papr",
                       {"num_windows", "threshold_min_db", "threshold_max_db",
                        "threshold_step_db", "include_cp", "pulse_shaping"});
            cfg.papr.num_windows = require<std::size_t>(jp, root + "/papr", "num_windows");
            if (cfg.papr.num_windows < 1) config_fail(root + "/papr/num_windows", "must be >= 1");
            cfg.papr.threshold_min_db = require<double>(jp, root + "/papr", "threshold_min_db");
            cfg.papr.threshold_max_db = require<double>(jp, root + "/papr", "threshold_max_db");
            cfg.papr.threshold_step_db = require<double>(jp, root + "/papr", "threshold_step_db");
            if (!(cfg.papr.threshold_step_db > 0.0) ||
                cfg.papr.threshold_max_db <= cfg.papr.threshold_min_db)
                config_fail(root + "/papr", "bad threshold grid");
            cfg.papr.include_cp = get_or<bool>(jp, root + "/papr", "include_cp", false);
            if (jp.contains("pulse_shaping")) {
                const auto& js = jp.at("pulse_shaping");
                check_keys(js, root + "/papr/pulse_shaping",
                           {"rolloff", "span_symbols", "oversample"});
                cfg.papr.pulse_shaping = true;
                cfg.papr.rolloff = require<double>(js, root + "/papr/pulse_shaping", "rolloff");
                cfg.papr.span_symbols =
                    require<std::size_t>(js, root + "/papr/pulse_shaping", "span_symbols");
                cfg.papr.oversample =
                    require<std::size_t>(js, root + "/papr/pulse_shaping", "oversample");
                if (cfg.papr.rolloff < 0.0 || cfg.papr.rolloff > 1.0)
                    config_fail(root + "/papr/pulse_shaping/rolloff", "must be in [0, 1]");
            }
            break;
        }
        case ExperimentKind::PsdOob: {
            if (!j.contains("psd")) config_fail(root + "/psd", "missing required key");
            const auto& jp = j.at("psd");
            check_keys(jp, root + "/psd",
                       {"segment_len", "overlap_frac", "window", "oversampling", "num_frames",
                        "mask_csv", "channel_spacing_hz", "center_hz", "users"});
            cfg.psd.segment_len = get_or<std::size_t>(jp, root + "/psd", "segment_len", 2048);
            cfg.psd.overlap_frac = get_or<double>(jp, root + "/psd", "overlap_frac", 0.5);
            const std::string win =
                get_or<std::string>(jp, root + "/psd", "window", "blackman_harris");
            if (win == "rectangular")
                cfg.psd.window = PsdWindow::Rectangular;
            else if (win == "hann")
                cfg.psd.window = PsdWindow::Hann;
            else if (win == "blackman_harris")
                cfg.psd.window = PsdWindow::BlackmanHarris;
            else
                config_fail(root + "/psd/window", "unknown window");
            cfg.psd.oversampling = get_or<std::size_t>(jp, root + "/psd", "oversampling", 4);
            if (cfg.psd.oversampling < 2)
                config_fail(root + "/psd/oversampling", "must be >= 2 to expose out-of-band bins");
            cfg.psd.num_frames = get_or<std::size_t>(jp, root + "/psd", "num_frames", 20);
            cfg.psd.mask_csv = require<std::string>(jp, root + "/psd", "mask_csv");
            cfg.psd.channel_spacing_hz =
                get_or<double>(jp, root + "/psd", "channel_spacing_hz", 0.0);
            cfg.psd.center_hz = get_or<double>(jp, root + "/psd", "center_hz", 0.0);
            cfg.psd.users = get_or<std::size_t>(jp, root + "/psd", "users", 1);
            if (cfg.psd.users < 1 || cfg.psd.users > 2)
                config_fail(root + "/psd/users", "must be 1 or 2");
            const std::filesystem::path mask(cfg.psd.mask_csv);
            cfg.psd.mask_csv = mask.is_absolute() ? mask.string() : (base_dir / mask).string();
            break;
        }
        case ExperimentKind::BerAwgnPhn:
            if (!j.contains("phase_noise"))
                config_fail(root + "/phase_noise", "missing required key");
            cfg.phn = detail::parse_phn(j.at("phase_noise"), root + "/phase_noise");
            break;
        case ExperimentKind::BerBeamSplit: {
            if (!j.contains("channel")) config_fail(root + "/channel", "missing required key");
            cfg.channel = detail::parse_channel(j.at("channel"), root + "/channel");
            if (!j.contains("beam_split"))
                config_fail(root + "/beam_split", "missing required key");
            const auto& jb = j.at("beam_split");
            check_keys(jb, root + "/beam_split",
                       {"enabled", "ae_count_tx", "ae_count_rx", "f_c_hz", "steer_angle_deg"});
            cfg.beam.enabled = get_or<bool>(jb, root + "/beam_split", "enabled", true);
            cfg.beam.ae_count_tx = require<std::size_t>(jb, root + "/beam_split", "ae_count_tx");
            cfg.beam.ae_count_rx = require<std::size_t>(jb, root + "/beam_split", "ae_count_rx");
            cfg.beam.f_c_hz = require<double>(jb, root + "/beam_split", "f_c_hz");
            cfg.beam.steer_angle_rad =
                require<double>(jb, root + "/beam_split", "steer_angle_deg") * kPi / 180.0;
            break;
        }
        case ExperimentKind::BerDoublySelective: {
            if (!j.contains("channel")) config_fail(root + "/channel", "missing required key");
            cfg.channel = detail::parse_channel(j.at("channel"), root + "/channel");
            if (!j.contains("mobility")) config_fail(root + "/mobility", "missing required key");
            const auto& jm = j.at("mobility");
            check_keys(jm, root + "/mobility", {"speed_kmh", "carrier_hz"});
            cfg.mobility.speed_mps =
                require<double>(jm, root + "/mobility", "speed_kmh") / 3.6;
            cfg.mobility.carrier_hz = require<double>(jm, root + "/mobility", "carrier_hz");
            for (const auto& s : cfg.schemes)
                if (s.params.scheme != Scheme::CpOfdm && s.params.scheme != Scheme::Otfs)
                    config_fail(root + "/schemes",
                                "ber_doubly_selective supports cp_ofdm and otfs");
            break;
        }
    }

    cfg.canonical_json = j.dump();
    return cfg;
}

inline ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return from_json(j, path.has_parent_path() ? path.parent_path() : ".");
}

/// Mask fixture loader: CSV of (offset_hz, level_dbr), '#' comments allowed.
inline SpectralMask load_mask_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open mask file: " + path.string());
    SpectralMask mask;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("offset_hz", 0) == 0) continue;
        double off, lvl;
        if (std::sscanf(line.c_str(), "%lg,%lg", &off, &lvl) == 2)
            mask.breakpoints.emplace_back(off, lvl);
    }
    mask.validate();
    return mask;
}

}  // namespace terawave

#endif
