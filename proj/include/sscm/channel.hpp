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

/// \file channel.hpp
/// One complete channel realization and the end-to-end generator that runs
/// the link budget, temporal and spatial stages in order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sscm/link_budget.hpp"
#include "sscm/params.hpp"
#include "sscm/rng.hpp"
#include "sscm/spatial.hpp"
#include "sscm/temporal.hpp"

namespace sscm {

struct ChannelRealization {
    std::uint64_t id = 0;
    LinkState link;
    std::vector<TimeCluster> clusters;
    std::vector<SpatialLobe> aod_lobes;
    std::vector<SpatialLobe> aoa_lobes;
    /// assignment[n-1][m-1] -> (l1, l2)
    std::vector<std::vector<LobePair>> assignment;

    const std::vector<SpatialLobe>& lobes(Side side) const { return side == Side::Aod ? aod_lobes : aoa_lobes; }

    const LobePair& lobes_of(int n, int m) const {
        return assignment.at(static_cast<std::size_t>(n - 1)).at(static_cast<std::size_t>(m - 1));
    }

    std::size_t subpath_count() const {
        std::size_t c = 0;
        for (const auto& cl : clusters) c += cl.subpaths.size();
        return c;
    }
};

namespace detail {

inline std::vector<SpatialLobe> make_lobes(Side side, int count, const SpatialParams& params, RngStream& rng) {
    const auto az = lobe_mean_azimuths(count, rng);
    const auto el = lobe_mean_elevations(count, side, params, rng);
    std::vector<SpatialLobe> lobes(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < lobes.size(); ++i) {
        lobes[i].side = side;
        lobes[i].index = static_cast<int>(i) + 1;
        lobes[i].mean_azimuth_deg = az[i];
        lobes[i].mean_elevation_deg = el[i];
    }
    return lobes;
}

inline void shape_lobes(std::vector<SpatialLobe>& lobes, const SpatialParams& params, RngStream& rng) {
    std::vector<int> means;
    means.reserve(lobes.size());
    for (const auto& l : lobes) means.push_back(l.mean_azimuth_deg);
    const Side side = lobes.front().side;
    const auto spreads = lobe_spreads(means, side, params, rng);
    for (std::size_t i = 0; i < lobes.size(); ++i) {
        lobes[i].azimuth_spread_deg = spreads[i].azimuth;
        lobes[i].elevation_spread_deg = spreads[i].elevation;
    }
    for (auto& l : lobes) {
        l.segments = discretize_lobe(l, rng);
    }
    for (auto& l : lobes) {
        const auto s = draw_lobe_sigmas(side, params, rng);
        l.sigma_theta_deg = s.theta;
        l.sigma_phi_deg = s.phi;
        segment_powers(l, params);
    }
}

}  // namespace detail

/// Runs the full generation procedure on `rng`. The stream is consumed in a
/// fixed order, so (params, stream) fully determines the realization.
inline ChannelRealization generate_channel(const ModelParams& params, RngStream& rng, std::uint64_t id = 0) {
    ChannelRealization ch;
    ch.id = id;
    ch.link = draw_link(params.link, rng);

    const SpatialParams& sp = params.spatial;
    const Counts counts = draw_counts(params.temporal, sp.mu_aod, sp.mu_aoa, sp.l_max, rng);
    ch.clusters = generate_clusters(counts.clusters, ch.link.omni_rx_power_mw(), ch.link.free_space_delay_ns,
                                    params.temporal, rng);

    ch.aod_lobes = detail::make_lobes(Side::Aod, counts.aod_lobes, sp, rng);
    ch.aoa_lobes = detail::make_lobes(Side::Aoa, counts.aoa_lobes, sp, rng);

    LobeAssignment assigned = assign_subpaths_to_lobes(ch.clusters, counts.aod_lobes, counts.aoa_lobes, rng);
    for (std::size_t i = 0; i < ch.aod_lobes.size(); ++i) ch.aod_lobes[i].total_power_mw = assigned.aod_powers[i];
    for (std::size_t i = 0; i < ch.aoa_lobes.size(); ++i) ch.aoa_lobes[i].total_power_mw = assigned.aoa_powers[i];
    ch.assignment = std::move(assigned.pairs);

    detail::shape_lobes(ch.aod_lobes, sp, rng);
    detail::shape_lobes(ch.aoa_lobes, sp, rng);
    return ch;
}

/// Realization `index` of the ensemble rooted at `seed`.
inline ChannelRealization generate_channel(const ModelParams& params, std::uint64_t seed, std::uint64_t index) {
    RngStream rng = RngStream(seed).substream(index);
    return generate_channel(params, rng, index);
}

inline AngularSpectrum assemble_spectrum(const ChannelRealization& ch, Side side) {
    return assemble_spectrum(std::span<const SpatialLobe>(ch.lobes(side)));
}

/// One multipath tap of the impulse response; angles are the mean angles of
/// the subpath's AOD and AOA lobes.
struct Tap {
    int cluster = 0;
    int subpath = 0;
    double time_ns = 0.0;
    double power_mw = 0.0;
    double amplitude = 0.0;  // sqrt(mW)
    double phase_rad = 0.0;
    int aod_azimuth_deg = 0;
    int aod_elevation_deg = 0;
    int aoa_azimuth_deg = 0;
    int aoa_elevation_deg = 0;
    int aod_lobe = 1;
    int aoa_lobe = 1;
};

/// One tap per subpath, sorted by arrival time.
inline std::vector<Tap> impulse_response(const ChannelRealization& ch) {
    std::vector<Tap> taps;
    taps.reserve(ch.subpath_count());
    for (const auto& c : ch.clusters) {
        for (const auto& s : c.subpaths) {
            const LobePair& lp = ch.lobes_of(s.cluster_index, s.subpath_index);
            const SpatialLobe& aod = ch.aod_lobes.at(static_cast<std::size_t>(lp.aod - 1));
            const SpatialLobe& aoa = ch.aoa_lobes.at(static_cast<std::size_t>(lp.aoa - 1));
            Tap t;
            t.cluster = s.cluster_index;
            t.subpath = s.subpath_index;
            t.time_ns = s.abs_time_ns;
            t.power_mw = s.power_mw;
            t.amplitude = std::sqrt(s.power_mw);
            t.phase_rad = s.phase_rad;
            t.aod_azimuth_deg = aod.mean_azimuth_deg;
            t.aod_elevation_deg = aod.mean_elevation_deg;
            t.aoa_azimuth_deg = aoa.mean_azimuth_deg;
            t.aoa_elevation_deg = aoa.mean_elevation_deg;
            t.aod_lobe = lp.aod;
            t.aoa_lobe = lp.aoa;
            taps.push_back(t);
        }
    }
    std::stable_sort(taps.begin(), taps.end(), [](const Tap& a, const Tap& b) { return a.time_ns < b.time_ns; });
    return taps;
}

}  // namespace sscm
