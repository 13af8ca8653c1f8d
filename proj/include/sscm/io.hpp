// SPDX-License-Identifier: Apache-2.0
//
// sscm: 3-D statistical spatial channel simulator for 28 GHz NLOS links
// Copyright (C) 2026 The sscm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

/// \file io.hpp
/// Run configuration and the on-disk formats.
///
/// Formats (all carry `format_version`, described in README.md):
///  - taps CSV: one row per subpath of every realization;
///  - realizations JSONL: one JSON object per realization;
///  - spectrum CSV/JSON: sparse 360 x 181 azimuth/elevation grid;
///  - stats JSON: ensemble validation report.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include <nlohmann/json.hpp>

#include "sscm/analysis.hpp"
#include "sscm/channel.hpp"
#include "sscm/params.hpp"

namespace sscm {

inline constexpr int kFormatVersion = 1;

enum class OutputFormat { Tabular, Structured };

struct RunConfig {
    std::uint64_t seed = 1;
    std::uint64_t ensemble_size = 10000;
    ModelParams params;
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Tabular;
    bool validation_mode = true;
    bool strict = false;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const {
        if (ensemble_size < 1) throw ConfigError("ensemble_size", "must be >= 1");
        params.validate();
    }

    AnalysisOptions analysis_options() const {
        AnalysisOptions o;
        o.validation_mode = validation_mode;
        o.void_ns = params.temporal.inter_cluster_void_ns;
        return o;
    }
};

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Applies one `name=value` override.
inline void apply_param_override(ModelParams& params, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(std::string(assignment), "expected name=value");
    }
    const std::string name(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError(name, "value '" + text + "' is not a number");
    }
    params.set(name, value);
}

inline nlohmann::ordered_json params_to_json(const ModelParams& params) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& f : ModelParams::fields()) {
        const double v = f.get(params);
        if (f.integral) {
            j[f.name] = static_cast<long long>(v);
        } else {
            j[f.name] = v;
        }
    }
    return j;
}

inline nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["seed"] = cfg.seed;
    j["ensemble_size"] = cfg.ensemble_size;
    j["validation_mode"] = cfg.validation_mode;
    j["params"] = params_to_json(cfg.params);
    return j;
}

/// Merges a JSON config document into `cfg`. Recognized keys: seed,
/// ensemble_size, validation_mode, out_dir, params (object of overrides).
inline void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "ensemble_size") {
                cfg.ensemble_size = value.get<std::uint64_t>();
            } else if (key == "validation_mode") {
                cfg.validation_mode = value.get<bool>();
            } else if (key == "out_dir") {
                cfg.out_dir = value.get<std::string>();
            } else if (key == "format_version") {
                if (value.get<int>() != kFormatVersion) throw ConfigError(key, "unsupported version");
            } else if (key == "params") {
                if (!value.is_object()) throw ConfigError("params", "must be an object");
                for (const auto& [name, v] : value.items()) {
                    if (!v.is_number()) throw ConfigError(name, "must be a number");
                    cfg.params.set(name, v.get<double>());
                }
            } else {
                throw ConfigError(key, "unknown config key");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(key, e.what());
        }
    }
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    apply_config_json(cfg, j);
}

// ---- taps CSV ------------------------------------------------------------

inline constexpr std::string_view kTapColumns =
    "realization,n,m,t_ns,power_mw,phase_rad,aod_az,aod_el,aoa_az,aoa_el,l1,l2";

inline void write_taps_header(std::ostream& os, const RunConfig& cfg) {
    os << "# sscm taps format_version=" << kFormatVersion << '\n';
    os << "# config=" << config_to_json(cfg).dump() << '\n';
    os << kTapColumns << '\n';
}

/// Rows follow the impulse response order (time-sorted).
inline void write_taps_rows(std::ostream& os, const ChannelRealization& ch) {
    for (const auto& t : impulse_response(ch)) {
        os << ch.id << ',' << t.cluster << ',' << t.subpath << ',' << format_double(t.time_ns) << ','
           << format_double(t.power_mw) << ',' << format_double(t.phase_rad) << ',' << t.aod_azimuth_deg << ','
           << t.aod_elevation_deg << ',' << t.aoa_azimuth_deg << ',' << t.aoa_elevation_deg << ',' << t.aod_lobe
           << ',' << t.aoa_lobe << '\n';
    }
}

// ---- realization JSON ----------------------------------------------------

inline nlohmann::ordered_json realization_to_json(const ChannelRealization& ch) {
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["id"] = ch.id;
    j["link"] = {{"distance_m", ch.link.distance_m},
                 {"path_loss_db", ch.link.path_loss_db},
                 {"shadow_db", ch.link.shadow_db},
                 {"omni_rx_power_dbm", ch.link.omni_rx_power_dbm},
                 {"free_space_delay_ns", ch.link.free_space_delay_ns}};
    auto clusters = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < ch.clusters.size(); ++n) {
        const auto& c = ch.clusters[n];
        nlohmann::ordered_json cj;
        cj["n"] = c.index;
        cj["excess_delay_ns"] = c.excess_delay_ns;
        cj["power_mw"] = c.power_mw;
        auto subs = nlohmann::ordered_json::array();
        for (std::size_t m = 0; m < c.subpaths.size(); ++m) {
            const auto& s = c.subpaths[m];
            const auto& lp = ch.assignment[n][m];
            subs.push_back({{"m", s.subpath_index},
                            {"intra_delay_ns", s.intra_delay_ns},
                            {"power_mw", s.power_mw},
                            {"phase_rad", s.phase_rad},
                            {"abs_time_ns", s.abs_time_ns},
                            {"below_floor", s.below_floor},
                            {"l1", lp.aod},
                            {"l2", lp.aoa}});
        }
        cj["subpaths"] = std::move(subs);
        clusters.push_back(std::move(cj));
    }
    j["clusters"] = std::move(clusters);
    for (Side side : {Side::Aod, Side::Aoa}) {
        auto lobes = nlohmann::ordered_json::array();
        for (const auto& l : ch.lobes(side)) {
            lobes.push_back({{"i", l.index},
                             {"mean_azimuth_deg", l.mean_azimuth_deg},
                             {"mean_elevation_deg", l.mean_elevation_deg},
                             {"azimuth_spread_deg", l.azimuth_spread_deg},
                             {"elevation_spread_deg", l.elevation_spread_deg},
                             {"total_power_mw", l.total_power_mw},
                             {"sigma_theta_deg", l.sigma_theta_deg},
                             {"sigma_phi_deg", l.sigma_phi_deg},
                             {"azimuth_asymmetry", l.azimuth_asymmetry},
                             {"elevation_asymmetry", l.elevation_asymmetry}});
        }
        j[side == Side::Aod ? "aod_lobes" : "aoa_lobes"] = std::move(lobes);
    }
    return j;
}

/// Rebuilds a realization; lobe segments are recomputed from the stored
/// lobe parameters with `spatial` (only its segment floor is used).
inline ChannelRealization realization_from_json(const nlohmann::json& j, const SpatialParams& spatial = {}) {
    try {
        if (j.at("format_version").get<int>() != kFormatVersion) {
            throw IoError("realization: unsupported format_version");
        }
        ChannelRealization ch;
        ch.id = j.at("id").get<std::uint64_t>();
        const auto& lj = j.at("link");
        ch.link.distance_m = lj.at("distance_m").get<double>();
        ch.link.path_loss_db = lj.at("path_loss_db").get<double>();
        ch.link.shadow_db = lj.at("shadow_db").get<double>();
        ch.link.omni_rx_power_dbm = lj.at("omni_rx_power_dbm").get<double>();
        ch.link.free_space_delay_ns = lj.at("free_space_delay_ns").get<double>();
        for (const auto& cj : j.at("clusters")) {
            TimeCluster c;
            c.index = cj.at("n").get<int>();
            c.excess_delay_ns = cj.at("excess_delay_ns").get<double>();
            c.power_mw = cj.at("power_mw").get<double>();
            std::vector<LobePair> pairs;
            for (const auto& sj : cj.at("subpaths")) {
                Subpath s;
                s.cluster_index = c.index;
                s.subpath_index = sj.at("m").get<int>();
                s.intra_delay_ns = sj.at("intra_delay_ns").get<double>();
                s.power_mw = sj.at("power_mw").get<double>();
                s.phase_rad = sj.at("phase_rad").get<double>();
                s.abs_time_ns = sj.at("abs_time_ns").get<double>();
                s.below_floor = sj.at("below_floor").get<bool>();
                pairs.push_back({sj.at("l1").get<int>(), sj.at("l2").get<int>()});
                c.subpaths.push_back(s);
            }
            ch.clusters.push_back(std::move(c));
            ch.assignment.push_back(std::move(pairs));
        }
        for (Side side : {Side::Aod, Side::Aoa}) {
            auto& lobes = side == Side::Aod ? ch.aod_lobes : ch.aoa_lobes;
            for (const auto& lj2 : j.at(side == Side::Aod ? "aod_lobes" : "aoa_lobes")) {
                SpatialLobe l;
                l.side = side;
                l.index = lj2.at("i").get<int>();
                l.mean_azimuth_deg = lj2.at("mean_azimuth_deg").get<int>();
                l.mean_elevation_deg = lj2.at("mean_elevation_deg").get<int>();
                l.azimuth_spread_deg = lj2.at("azimuth_spread_deg").get<int>();
                l.elevation_spread_deg = lj2.at("elevation_spread_deg").get<int>();
                l.total_power_mw = lj2.at("total_power_mw").get<double>();
                l.sigma_theta_deg = lj2.at("sigma_theta_deg").get<double>();
                l.sigma_phi_deg = lj2.at("sigma_phi_deg").get<double>();
                l.azimuth_asymmetry = lj2.at("azimuth_asymmetry").get<int>();
                l.elevation_asymmetry = lj2.at("elevation_asymmetry").get<int>();
                l.segments = lobe_segment_angles(l);
                segment_powers(l, spatial);
                lobes.push_back(std::move(l));
            }
        }
        return ch;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("realization: malformed record: ") + e.what());
    }
}

/// Finds record `id` in a realizations JSONL stream.
inline ChannelRealization read_realization(std::istream& in, std::uint64_t id, const SpatialParams& spatial = {}) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw IoError(std::string("realizations: parse error: ") + e.what());
        }
        if (j.value("id", std::uint64_t{0}) == id && j.contains("id")) {
            return realization_from_json(j, spatial);
        }
    }
    throw IoError("realization " + std::to_string(id) + " not found");
}

// ---- spectrum ------------------------------------------------------------

inline void write_spectrum_csv(std::ostream& os, const AngularSpectrum& spec, std::uint64_t id, Side side) {
    os << "# sscm spectrum format_version=" << kFormatVersion << " realization=" << id << " side=" << to_string(side)
       << " azimuth_bins=" << kAzimuthBins << " elevation_bins=" << kElevationBins << " units=mW\n";
    os << "azimuth_deg,elevation_deg,power_mw\n";
    for (int az = 0; az < kAzimuthBins; ++az) {
        for (int el = kMinElevation; el <= kMaxElevation; ++el) {
            const double p = spec.at(az, el);
            if (p != 0.0) os << az << ',' << el << ',' << format_double(p) << '\n';
        }
    }
}

inline nlohmann::ordered_json spectrum_to_json(const AngularSpectrum& spec, std::uint64_t id, Side side) {
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["realization"] = id;
    j["side"] = std::string(to_string(side));
    j["azimuth_bins"] = kAzimuthBins;
    j["elevation_bins"] = kElevationBins;
    j["elevation_min_deg"] = kMinElevation;
    j["units"] = "mW";
    j["total_mw"] = spec.total();
    auto cells = nlohmann::ordered_json::array();
    for (int az = 0; az < kAzimuthBins; ++az) {
        for (int el = kMinElevation; el <= kMaxElevation; ++el) {
            const double p = spec.at(az, el);
            if (p != 0.0) cells.push_back({az, el, p});
        }
    }
    j["cells"] = std::move(cells);
    return j;
}

// ---- stats report --------------------------------------------------------

/// One acceptance band check of the validation report.
struct BandCheck {
    std::string name;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass() const { return value >= lo && value <= hi; }
};

/// Bands applied by `validate --strict`.
inline std::vector<BandCheck> acceptance_checks(const EnsembleStats& s) {
    return {{"median_rms_delay_spread_ns", s.median_rms_delay_spread_ns(), 27.0, 37.0},
            {"mean_rms_lobe_azimuth_spread_deg", s.mean_lobe_az_spread_deg(), 5.5, 8.5},
            {"mean_rms_lobe_elevation_spread_deg", s.mean_lobe_el_spread_deg(), 5.5, 8.5},
            {"cluster_decay_ns", s.fitted_big_gamma_ns, 34.6, 64.2},
            {"cluster_p0", s.fitted_p0, 0.883 - 0.15, 0.883 + 0.15},
            {"subpath_decay_ns", s.fitted_gamma_ns, 11.8, 22.0},
            {"subpath_p0", s.fitted_pi0, 0.342 - 0.10, 0.342 + 0.10}};
}

inline nlohmann::ordered_json histogram(const std::vector<int>& values) {
    std::map<int, std::size_t> h;
    for (int v : values) ++h[v];
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, c] : h) j[std::to_string(k)] = c;
    return j;
}

inline nlohmann::ordered_json stats_to_json(const EnsembleStats& s, const RunConfig& cfg) {
    const auto num = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
    nlohmann::ordered_json j;
    j["format_version"] = kFormatVersion;
    j["config"] = config_to_json(cfg);
    j["realizations"] = s.realizations;
    j["realizations_without_taps"] = s.empty_realizations;
    j["rms_delay_spread_ns"] = {{"median", num(s.median_rms_delay_spread_ns())},
                                {"mean", num(s.rms_delay_spreads_ns.empty() ? NAN : mean(s.rms_delay_spreads_ns))},
                                {"samples", s.rms_delay_spreads_ns.size()}};
    j["rms_lobe_spread_deg"] = {{"azimuth_mean", num(s.mean_lobe_az_spread_deg())},
                                {"elevation_mean", num(s.mean_lobe_el_spread_deg())},
                                {"lobes", s.rms_lobe_az_spreads_deg.size()}};
    j["cluster_decay"] = {{"decay_ns", num(s.fitted_big_gamma_ns)},
                          {"p0", num(s.fitted_p0)},
                          {"points", s.cluster_points.size()}};
    j["subpath_decay"] = {{"decay_ns", num(s.fitted_gamma_ns)},
                          {"p0", num(s.fitted_pi0)},
                          {"points", s.subpath_points.size()}};
    j["histograms"] = {{"clusters", histogram(s.cluster_counts)},
                       {"aod_lobes", histogram(s.lobe_counts_aod)},
                       {"aoa_lobes", histogram(s.lobe_counts_aoa)},
                       {"detected_aoa_lobes", histogram(s.detected_aoa_lobe_counts)}};
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : acceptance_checks(s)) {
        checks.push_back({{"name", c.name}, {"value", num(c.value)}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.pass()}});
    }
    j["acceptance"] = std::move(checks);
    return j;
}

}  // namespace sscm
