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

/// \file link_budget.hpp
/// T-R distance and omnidirectional received power from the 1 m close-in
/// free-space reference path loss model.

#include <cmath>

#include "sscm/params.hpp"
#include "sscm/rng.hpp"

namespace sscm {

struct LinkState {
    double distance_m = 0.0;
    double path_loss_db = 0.0;
    double shadow_db = 0.0;
    double omni_rx_power_dbm = 0.0;
    double free_space_delay_ns = 0.0;

    double omni_rx_power_mw() const { return std::pow(10.0, omni_rx_power_dbm / 10.0); }
};

inline double draw_distance(const LinkConfig& cfg, RngStream& rng) {
    cfg.validate();
    return rng.uniform(cfg.d_min, cfg.d_max);
}

/// PL = FSPL(1 m) + 10 n log10(d) + shadow, for d >= 1 m.
inline double path_loss_nlos(const LinkConfig& cfg, double distance_m, double shadow_db) {
    if (!(distance_m >= 1.0)) {
        throw OutOfModelRange("path_loss_nlos: distance below the 1 m reference");
    }
    return cfg.fspl_1m_db + 10.0 * cfg.ple * std::log10(distance_m) + shadow_db;
}

inline double received_power(const LinkConfig& cfg, double path_loss_db) {
    return cfg.tx_power_dbm + cfg.tx_gain_dbi + cfg.rx_gain_dbi - path_loss_db;
}

inline double free_space_delay_ns(double distance_m) { return distance_m / kSpeedOfLightMPerNs; }

/// Draws the distance, then the shadow factor, and fills in t0.
inline LinkState draw_link(const LinkConfig& cfg, RngStream& rng) {
    LinkState s;
    s.distance_m = draw_distance(cfg, rng);
    s.shadow_db = rng.normal(0.0, cfg.shadow_sigma_db);
    s.path_loss_db = path_loss_nlos(cfg, s.distance_m, s.shadow_db);
    s.omni_rx_power_dbm = received_power(cfg, s.path_loss_db);
    s.free_space_delay_ns = free_space_delay_ns(s.distance_m);
    return s;
}

}  // namespace sscm
