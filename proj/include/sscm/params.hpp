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

/// \file params.hpp
/// Fitted model constants (28 GHz, dense-urban NLOS) and their validation.
///
/// Every field can be overridden by name through `ModelParams::set`, which is
/// what the CLI's `--param name=value` and config files use.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sscm/error.hpp"

namespace sscm {

/// Speed of light in m/ns (3e8 m/s).
inline constexpr double kSpeedOfLightMPerNs = 0.3;

struct LinkConfig {
    double tx_power_dbm = 30.0;
    double tx_gain_dbi = 24.5;
    double rx_gain_dbi = 24.5;
    double d_min = 60.0;  // m
    double d_max = 200.0;  // m
    double ple = 3.4;
    double shadow_sigma_db = 9.7;
    double fspl_1m_db = 61.4;
    double wavelength_m = 0.0107;  // informational only

    void validate() const {
        if (!(d_min >= 1.0)) throw ConfigError("d_min", "must be >= 1 m");
        if (!(d_min <= d_max)) throw ConfigError("d_max", "must be >= d_min");
        if (!(ple > 0.0)) throw ConfigError("ple", "must be > 0");
        if (!(shadow_sigma_db >= 0.0)) throw ConfigError("shadow_sigma_db", "must be >= 0");
    }
};

struct TemporalParams {
    int n_max = 6;
    int m_max = 30;
    double mu_tau_ns = 83.0;
    double inter_cluster_void_ns = 25.0;
    double cluster_decay_ns = 49.4;   // Gamma
    double cluster_p0 = 0.883;
    double subpath_decay_ns = 16.9;   // gamma
    double subpath_p0 = 0.342;
    double cluster_shadow_sigma_db = 3.0;
    double subpath_shadow_sigma_db = 6.0;
    double bb_bandwidth_hz = 400e6;
    double x_max = 0.43;
    double carrier_hz = 28e9;
    double min_subpath_power_dbm = -100.0;

    /// 1 / B_bb in nanoseconds (2.5 ns at 400 MHz).
    double subpath_resolution_ns() const { return 1e9 / bb_bandwidth_hz; }

    void validate() const {
        if (n_max < 1) throw ConfigError("n_max", "must be >= 1");
        if (m_max < 1) throw ConfigError("m_max", "must be >= 1");
        if (!(mu_tau_ns > 0.0)) throw ConfigError("mu_tau_ns", "must be > 0");
        if (!(inter_cluster_void_ns > 0.0)) throw ConfigError("inter_cluster_void_ns", "must be > 0");
        if (!(cluster_decay_ns > 0.0)) throw ConfigError("cluster_decay_ns", "must be > 0");
        if (!(subpath_decay_ns > 0.0)) throw ConfigError("subpath_decay_ns", "must be > 0");
        if (!(cluster_p0 > 0.0 && cluster_p0 <= 1.0)) throw ConfigError("cluster_p0", "must be in (0, 1]");
        if (!(subpath_p0 > 0.0 && subpath_p0 <= 1.0)) throw ConfigError("subpath_p0", "must be in (0, 1]");
        if (!(cluster_shadow_sigma_db >= 0.0)) throw ConfigError("cluster_shadow_sigma_db", "must be >= 0");
        if (!(subpath_shadow_sigma_db >= 0.0)) throw ConfigError("subpath_shadow_sigma_db", "must be >= 0");
        if (!(bb_bandwidth_hz > 0.0)) throw ConfigError("bb_bandwidth_hz", "must be > 0");
        if (!(x_max >= 0.0)) throw ConfigError("x_max", "must be >= 0");
        if (!(carrier_hz > 0.0)) throw ConfigError("carrier_hz", "must be > 0");
    }
};

/// Mean/standard deviation pair of a normal (or lognormal) draw, in degrees.
struct AngleDist {
    double mean = 0.0;
    double std = 0.0;
};

struct SpatialParams {
    int l_max = 5;
    double mu_aod = 1.6;
    double mu_aoa = 1.7;
    AngleDist aod_elevation{-4.9, 4.5};
    AngleDist aoa_elevation{3.6, 4.8};
    AngleDist aod_az_spread{30.0, 16.0};     // normal, floored
    int aod_elev_spread_deg = 10;
    AngleDist aoa_az_spread_dln{32.0, 18.0};  // discrete lognormal
    AngleDist aoa_elev_spread{31.0, 11.0};    // normal, floored
    int min_spread_deg = 5;
    AngleDist aod_sigma_theta{6.6, 3.5};
    AngleDist aod_sigma_phi{5.0, 0.0};
    AngleDist aoa_sigma_theta{6.0, 1.0};
    AngleDist aoa_sigma_phi{6.0, 2.0};
    double min_sigma_deg = 0.5;
    double segment_floor = 0.1;
    double max_lobe_overlap = 0.10;

    void validate() const {
        if (l_max < 1) throw ConfigError("l_max", "must be >= 1");
        if (!(mu_aod >= 0.0)) throw ConfigError("mu_aod", "must be >= 0");
        if (!(mu_aoa >= 0.0)) throw ConfigError("mu_aoa", "must be >= 0");
        if (aod_elev_spread_deg < 1) throw ConfigError("aod_elev_spread_deg", "must be >= 1");
        if (min_spread_deg < 1) throw ConfigError("min_spread_deg", "must be >= 1");
        if (!(aoa_az_spread_dln.mean > 0.0)) throw ConfigError("aoa_az_spread_dln_mean", "must be > 0");
        if (!(min_sigma_deg > 0.0)) throw ConfigError("min_sigma_deg", "must be > 0");
        if (!(segment_floor > 0.0 && segment_floor <= 1.0)) throw ConfigError("segment_floor", "must be in (0, 1]");
        if (!(max_lobe_overlap >= 0.0 && max_lobe_overlap <= 1.0)) throw ConfigError("max_lobe_overlap", "must be in [0, 1]");
        const std::pair<const char*, const AngleDist*> dists[] = {
            {"aod_elev", &aod_elevation},       {"aoa_elev", &aoa_elevation},
            {"aod_az_spread", &aod_az_spread},  {"aoa_az_spread_dln", &aoa_az_spread_dln},
            {"aoa_elev_spread", &aoa_elev_spread}, {"aod_sigma_theta", &aod_sigma_theta},
            {"aod_sigma_phi", &aod_sigma_phi},  {"aoa_sigma_theta", &aoa_sigma_theta},
            {"aoa_sigma_phi", &aoa_sigma_phi}};
        for (const auto& [name, d] : dists) {
            if (!(d->std >= 0.0)) throw ConfigError(std::string(name) + "_std", "must be >= 0");
        }
    }
};

/// All model constants. Defaults are the fitted 28 GHz NLOS values.
struct ModelParams {
    LinkConfig link;
    TemporalParams temporal;
    SpatialParams spatial;

    void validate() const {
        link.validate();
        temporal.validate();
        spatial.validate();
    }

    /// Named numeric field, used for overrides and for echoing the effective
    /// configuration. Integer fields reject non-integral values.
    struct Field {
        std::string name;
        bool integral;
        std::function<double(const ModelParams&)> get;
        std::function<void(ModelParams&, double)> set;
    };

    static const std::vector<Field>& fields() {
        static const std::vector<Field> table = make_fields();
        return table;
    }

    double get(std::string_view name) const { return find(name).get(*this); }

    void set(std::string_view name, double value) {
        const Field& f = find(name);
        if (f.integral && value != static_cast<double>(static_cast<long long>(value))) {
            throw ConfigError(f.name, "must be an integer");
        }
        f.set(*this, value);
    }

private:
    static const Field& find(std::string_view name) {
        for (const auto& f : fields()) {
            if (f.name == name) {
                return f;
            }
        }
        throw ConfigError(std::string(name), "unknown parameter");
    }

    template <auto Sub, auto Member>
    static Field real_field(std::string name) {
        return {std::move(name), false,
                [](const ModelParams& p) { return static_cast<double>((p.*Sub).*Member); },
                [](ModelParams& p, double v) { (p.*Sub).*Member = v; }};
    }

    template <auto Sub, auto Member>
    static Field int_field(std::string name) {
        return {std::move(name), true,
                [](const ModelParams& p) { return static_cast<double>((p.*Sub).*Member); },
                [](ModelParams& p, double v) { (p.*Sub).*Member = static_cast<int>(v); }};
    }

    template <auto Dist>
    static void angle_fields(std::vector<Field>& out, const std::string& stem) {
        out.push_back({stem + "_mean", false,
                       [](const ModelParams& p) { return (p.spatial.*Dist).mean; },
                       [](ModelParams& p, double v) { (p.spatial.*Dist).mean = v; }});
        out.push_back({stem + "_std", false,
                       [](const ModelParams& p) { return (p.spatial.*Dist).std; },
                       [](ModelParams& p, double v) { (p.spatial.*Dist).std = v; }});
    }

    static std::vector<Field> make_fields() {
        using M = ModelParams;
        std::vector<Field> f;
        f.push_back(real_field<&M::link, &LinkConfig::tx_power_dbm>("tx_power_dbm"));
        f.push_back(real_field<&M::link, &LinkConfig::tx_gain_dbi>("tx_gain_dbi"));
        f.push_back(real_field<&M::link, &LinkConfig::rx_gain_dbi>("rx_gain_dbi"));
        f.push_back(real_field<&M::link, &LinkConfig::d_min>("d_min"));
        f.push_back(real_field<&M::link, &LinkConfig::d_max>("d_max"));
        f.push_back(real_field<&M::link, &LinkConfig::ple>("ple"));
        f.push_back(real_field<&M::link, &LinkConfig::shadow_sigma_db>("shadow_sigma_db"));
        f.push_back(real_field<&M::link, &LinkConfig::fspl_1m_db>("fspl_1m_db"));
        f.push_back(real_field<&M::link, &LinkConfig::wavelength_m>("wavelength_m"));

        f.push_back(int_field<&M::temporal, &TemporalParams::n_max>("n_max"));
        f.push_back(int_field<&M::temporal, &TemporalParams::m_max>("m_max"));
        f.push_back(real_field<&M::temporal, &TemporalParams::mu_tau_ns>("mu_tau_ns"));
        f.push_back(real_field<&M::temporal, &TemporalParams::inter_cluster_void_ns>("inter_cluster_void_ns"));
        f.push_back(real_field<&M::temporal, &TemporalParams::cluster_decay_ns>("cluster_decay_ns"));
        f.push_back(real_field<&M::temporal, &TemporalParams::cluster_p0>("cluster_p0"));
        f.push_back(real_field<&M::temporal, &TemporalParams::subpath_decay_ns>("subpath_decay_ns"));
        f.push_back(real_field<&M::temporal, &TemporalParams::subpath_p0>("subpath_p0"));
        f.push_back(real_field<&M::temporal, &TemporalParams::cluster_shadow_sigma_db>("cluster_shadow_sigma_db"));
        f.push_back(real_field<&M::temporal, &TemporalParams::subpath_shadow_sigma_db>("subpath_shadow_sigma_db"));
        f.push_back(real_field<&M::temporal, &TemporalParams::bb_bandwidth_hz>("bb_bandwidth_hz"));
        f.push_back(real_field<&M::temporal, &TemporalParams::x_max>("x_max"));
        f.push_back(real_field<&M::temporal, &TemporalParams::carrier_hz>("carrier_hz"));
        f.push_back(real_field<&M::temporal, &TemporalParams::min_subpath_power_dbm>("min_subpath_power_dbm"));

        f.push_back(int_field<&M::spatial, &SpatialParams::l_max>("l_max"));
        f.push_back(real_field<&M::spatial, &SpatialParams::mu_aod>("mu_aod"));
        f.push_back(real_field<&M::spatial, &SpatialParams::mu_aoa>("mu_aoa"));
        angle_fields<&SpatialParams::aod_elevation>(f, "aod_elev");
        angle_fields<&SpatialParams::aoa_elevation>(f, "aoa_elev");
        angle_fields<&SpatialParams::aod_az_spread>(f, "aod_az_spread");
        f.push_back(int_field<&M::spatial, &SpatialParams::aod_elev_spread_deg>("aod_elev_spread_deg"));
        angle_fields<&SpatialParams::aoa_az_spread_dln>(f, "aoa_az_spread_dln");
        angle_fields<&SpatialParams::aoa_elev_spread>(f, "aoa_elev_spread");
        f.push_back(int_field<&M::spatial, &SpatialParams::min_spread_deg>("min_spread_deg"));
        angle_fields<&SpatialParams::aod_sigma_theta>(f, "aod_sigma_theta");
        angle_fields<&SpatialParams::aod_sigma_phi>(f, "aod_sigma_phi");
        angle_fields<&SpatialParams::aoa_sigma_theta>(f, "aoa_sigma_theta");
        angle_fields<&SpatialParams::aoa_sigma_phi>(f, "aoa_sigma_phi");
        f.push_back(real_field<&M::spatial, &SpatialParams::min_sigma_deg>("min_sigma_deg"));
        f.push_back(real_field<&M::spatial, &SpatialParams::segment_floor>("segment_floor"));
        f.push_back(real_field<&M::spatial, &SpatialParams::max_lobe_overlap>("max_lobe_overlap"));
        return f;
    }
};

}  // namespace sscm
