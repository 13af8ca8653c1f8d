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

/// \file spatial.hpp
/// Angular skeleton of a channel: AOD/AOA spatial lobes, the random mapping
/// of subpaths onto lobes, lobe spreads, the 1-degree lobe segments and
/// their shaped powers.
///
/// Angles are integer degrees. Azimuth wraps on [0, 360); elevation lives on
/// [-90, 90] and does not wrap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sscm/params.hpp"
#include "sscm/rng.hpp"
#include "sscm/temporal.hpp"

namespace sscm {

enum class Side { Aod, Aoa };

inline std::string_view to_string(Side s) { return s == Side::Aod ? "aod" : "aoa"; }

inline constexpr int kAzimuthBins = 360;
inline constexpr int kElevationBins = 181;
inline constexpr int kMinElevation = -90;
inline constexpr int kMaxElevation = 90;

inline int wrap_azimuth(int az) {
    const int r = az % kAzimuthBins;
    return r < 0 ? r + kAzimuthBins : r;
}

struct LobeSegment {
    int azimuth_deg = 0;
    int elevation_deg = 0;
    int azimuth_offset = 0;    // k_j
    int elevation_offset = 0;  // h_l
    double gain = 1.0;         // R(dtheta, dphi)
    double power_mw = 0.0;     // gain * lobe total power
};

struct SpatialLobe {
    Side side = Side::Aoa;
    int index = 0;  // 1-based
    int mean_azimuth_deg = 0;
    int mean_elevation_deg = 0;
    int azimuth_spread_deg = 1;    // K_i
    int elevation_spread_deg = 1;  // H_i
    double total_power_mw = 0.0;
    double sigma_theta_deg = 1.0;
    double sigma_phi_deg = 1.0;
    int azimuth_asymmetry = 0;    // X in {0, 1}, only used for even K
    int elevation_asymmetry = 0;  // W in {0, 1}, only used for even H
    std::vector<LobeSegment> segments;
};

/// theta_i ~ DU[360(i-1)/L, 360 i/L]; the endpoint 360 wraps to 0.
inline std::vector<int> lobe_mean_azimuths(int lobes, RngStream& rng) {
    if (lobes < 1) {
        throw InvalidParameter("lobe_mean_azimuths: need at least one lobe");
    }
    std::vector<int> theta(static_cast<std::size_t>(lobes));
    for (int i = 0; i < lobes; ++i) {
        // integer sector bounds, rounded inward
        const int lo = (360 * i + lobes - 1) / lobes;
        const int hi = (360 * (i + 1)) / lobes;
        theta[static_cast<std::size_t>(i)] = wrap_azimuth(static_cast<int>(rng.discrete_uniform(lo, hi)));
    }
    return theta;
}

/// [N(mu, sigma)] rounded to the nearest degree, clamped to [-90, 90].
inline std::vector<int> lobe_mean_elevations(int lobes, Side side, const SpatialParams& params, RngStream& rng) {
    if (lobes < 1) {
        throw InvalidParameter("lobe_mean_elevations: need at least one lobe");
    }
    const AngleDist& d = side == Side::Aod ? params.aod_elevation : params.aoa_elevation;
    std::vector<int> phi(static_cast<std::size_t>(lobes));
    for (auto& p : phi) {
        const auto v = std::llround(rng.normal(d.mean, d.std));
        p = static_cast<int>(std::clamp<long long>(v, kMinElevation, kMaxElevation));
    }
    return phi;
}

struct LobePair {
    int aod = 1;  // l1
    int aoa = 1;  // l2
};

struct LobeAssignment {
    /// pairs[n-1][m-1] is the joint lobe of subpath (n, m).
    std::vector<std::vector<LobePair>> pairs;
    std::vector<double> aod_powers;
    std::vector<double> aoa_powers;
};

/// Kronecker-delta sum with the lobe draws given explicitly (1-based).
inline std::vector<double> lobe_powers(const std::vector<TimeCluster>& clusters,
                                       const std::vector<std::vector<int>>& draws, int lobes) {
    std::vector<double> p(static_cast<std::size_t>(lobes), 0.0);
    for (std::size_t n = 0; n < clusters.size(); ++n) {
        const auto& subs = clusters[n].subpaths;
        if (draws.size() <= n || draws[n].size() != subs.size()) {
            throw InvalidParameter("lobe_powers: draws do not match clusters");
        }
        for (std::size_t m = 0; m < subs.size(); ++m) {
            const int w = draws[n][m];
            if (w < 1 || w > lobes) {
                throw InvalidParameter("lobe_powers: lobe index out of range");
            }
            p[static_cast<std::size_t>(w - 1)] += subs[m].power_mw;
        }
    }
    return p;
}

/// Independent DU[1, L] draws per subpath on each side.
inline LobeAssignment assign_subpaths_to_lobes(const std::vector<TimeCluster>& clusters, int aod_lobes,
                                               int aoa_lobes, RngStream& rng) {
    if (aod_lobes < 1 || aoa_lobes < 1) {
        throw InvalidParameter("assign_subpaths_to_lobes: need at least one lobe per side");
    }
    std::vector<std::vector<int>> aod(clusters.size());
    std::vector<std::vector<int>> aoa(clusters.size());
    LobeAssignment out;
    out.pairs.resize(clusters.size());
    for (std::size_t n = 0; n < clusters.size(); ++n) {
        const std::size_t count = clusters[n].subpaths.size();
        aod[n].resize(count);
        aoa[n].resize(count);
        out.pairs[n].resize(count);
        for (std::size_t m = 0; m < count; ++m) {
            aod[n][m] = static_cast<int>(rng.discrete_uniform(1, aod_lobes));
            aoa[n][m] = static_cast<int>(rng.discrete_uniform(1, aoa_lobes));
            out.pairs[n][m] = {aod[n][m], aoa[n][m]};
        }
    }
    out.aod_powers = lobe_powers(clusters, aod, aod_lobes);
    out.aoa_powers = lobe_powers(clusters, aoa, aoa_lobes);
    return out;
}

/// Length of the intersection of two arcs centred at `a` and `b` (degrees)
/// with widths `wa`, `wb`, on the 360-degree circle.
inline double arc_overlap(double a, double wa, double b, double wb) {
    double d = std::fmod(std::fabs(a - b), 360.0);
    if (d > 180.0) {
        d = 360.0 - d;
    }
    const double half_sum = 0.5 * (wa + wb);
    const double near_side = std::max(0.0, half_sum - d);
    const double far_side = std::max(0.0, half_sum - (360.0 - d));
    return std::min({near_side + far_side, wa, wb});
}

struct LobeSpread {
    int azimuth = 1;    // K_i
    int elevation = 1;  // H_i
};

namespace detail {

inline int draw_azimuth_spread(Side side, const SpatialParams& p, RngStream& rng) {
    int k = 0;
    if (side == Side::Aod) {
        k = std::max<int>(p.min_spread_deg,
                          static_cast<int>(std::llround(rng.normal(p.aod_az_spread.mean, p.aod_az_spread.std))));
    } else {
        k = static_cast<int>(rng.discrete_lognormal(p.aoa_az_spread_dln.mean, p.aoa_az_spread_dln.std));
    }
    return std::min(k, kAzimuthBins);
}

inline bool overlap_ok(int lobe, int spread, std::span<const int> means, std::span<const int> spreads,
                       double max_fraction) {
    const auto fits = [&](std::size_t other) {
        const double ov = arc_overlap(means[static_cast<std::size_t>(lobe)], spread, means[other], spreads[other]);
        return ov <= max_fraction * std::min(spread, spreads[other]);
    };
    const std::size_t count = means.size();
    if (lobe > 0 && !fits(static_cast<std::size_t>(lobe - 1))) {
        return false;
    }
    // last lobe is also adjacent to the first one across the 0/360 seam
    if (count > 2 && static_cast<std::size_t>(lobe) == count - 1 && !fits(0)) {
        return false;
    }
    return true;
}

}  // namespace detail

/// Spreads for lobes centred at `mean_azimuths`. Each K_i is redrawn (up to
/// 100 times) while it overlaps a circularly adjacent, already placed lobe by
/// more than `max_lobe_overlap` of the narrower extent; after that it is
/// shrunk to the widest value that satisfies the bound (never below 1).
inline std::vector<LobeSpread> lobe_spreads(std::span<const int> mean_azimuths, Side side,
                                            const SpatialParams& params, RngStream& rng) {
    if (mean_azimuths.empty()) {
        throw InvalidParameter("lobe_spreads: need at least one lobe");
    }
    std::vector<LobeSpread> out(mean_azimuths.size());
    std::vector<int> placed(mean_azimuths.size(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int lobe = static_cast<int>(i);
        int k = detail::draw_azimuth_spread(side, params, rng);
        int attempts = 0;
        while (!detail::overlap_ok(lobe, k, mean_azimuths, placed, params.max_lobe_overlap) && attempts < 100) {
            k = detail::draw_azimuth_spread(side, params, rng);
            ++attempts;
        }
        while (k > 1 && !detail::overlap_ok(lobe, k, mean_azimuths, placed, params.max_lobe_overlap)) {
            --k;
        }
        placed[i] = k;
        out[i].azimuth = k;
        if (side == Side::Aod) {
            out[i].elevation = params.aod_elev_spread_deg;
        } else {
            const auto h = std::llround(rng.normal(params.aoa_elev_spread.mean, params.aoa_elev_spread.std));
            out[i].elevation = static_cast<int>(std::clamp<long long>(h, params.min_spread_deg, kElevationBins));
        }
    }
    return out;
}

/// Integer offsets of a lobe with `spread` one-degree segments. Odd spreads
/// are symmetric; even spreads run from -spread/2 + (1 - x) to spread/2 - x.
inline std::vector<int> segment_offsets(int spread, int x) {
    if (spread < 1) {
        throw InvalidParameter("segment_offsets: spread must be >= 1");
    }
    int lo = 0;
    int hi = 0;
    if (spread % 2 == 1) {
        lo = -(spread - 1) / 2;
        hi = (spread - 1) / 2;
    } else {
        lo = -spread / 2 + (1 - x);
        hi = spread / 2 - x;
    }
    std::vector<int> k;
    k.reserve(static_cast<std::size_t>(spread));
    for (int v = lo; v <= hi; ++v) {
        k.push_back(v);
    }
    return k;
}

/// Segment grid of a lobe for its stored asymmetry flags. Azimuths wrap;
/// segments whose elevation leaves [-90, 90] are dropped.
inline std::vector<LobeSegment> lobe_segment_angles(const SpatialLobe& lobe) {
    if (lobe.azimuth_spread_deg < 1 || lobe.elevation_spread_deg < 1) {
        throw InvalidParameter("discretize_lobe: spreads must be >= 1");
    }
    const auto ks = segment_offsets(lobe.azimuth_spread_deg, lobe.azimuth_asymmetry);
    const auto hs = segment_offsets(lobe.elevation_spread_deg, lobe.elevation_asymmetry);
    std::vector<LobeSegment> segs;
    segs.reserve(ks.size() * hs.size());
    for (int k : ks) {
        for (int h : hs) {
            const int el = lobe.mean_elevation_deg + h;
            if (el < kMinElevation || el > kMaxElevation) {
                continue;
            }
            LobeSegment s;
            s.azimuth_deg = wrap_azimuth(lobe.mean_azimuth_deg + k);
            s.elevation_deg = el;
            s.azimuth_offset = k;
            s.elevation_offset = h;
            segs.push_back(s);
        }
    }
    return segs;
}

/// Draws the even-spread asymmetry flags (X, W) ~ DU{0, 1} and lays out the
/// lobe's segments.
inline std::vector<LobeSegment> discretize_lobe(SpatialLobe& lobe, RngStream& rng) {
    lobe.azimuth_asymmetry = static_cast<int>(rng.discrete_uniform(0, 1));
    lobe.elevation_asymmetry = static_cast<int>(rng.discrete_uniform(0, 1));
    return lobe_segment_angles(lobe);
}

/// R = max{exp(-(dtheta^2/s_theta^2 + dphi^2/s_phi^2)/2), floor}
inline double segment_gain(double dtheta, double dphi, double sigma_theta, double sigma_phi, double floor) {
    const double e = std::exp(-0.5 * (dtheta * dtheta / (sigma_theta * sigma_theta) +
                                      dphi * dphi / (sigma_phi * sigma_phi)));
    return std::max(e, floor);
}

namespace detail {

inline double draw_positive_sigma(const AngleDist& d, double min_sigma, RngStream& rng) {
    double s = rng.normal(d.mean, d.std);
    for (int attempt = 0; s <= 0.0 && attempt < 100; ++attempt) {
        s = rng.normal(d.mean, d.std);
    }
    return std::max(s, min_sigma);
}

}  // namespace detail

struct LobeSigmas {
    double theta = 1.0;
    double phi = 1.0;
};

/// Per-lobe Gaussian widths; non-positive draws are redrawn, and the result
/// is floored at `min_sigma_deg`.
inline LobeSigmas draw_lobe_sigmas(Side side, const SpatialParams& params, RngStream& rng) {
    const AngleDist& t = side == Side::Aod ? params.aod_sigma_theta : params.aoa_sigma_theta;
    const AngleDist& p = side == Side::Aod ? params.aod_sigma_phi : params.aoa_sigma_phi;
    LobeSigmas s;
    s.theta = detail::draw_positive_sigma(t, params.min_sigma_deg, rng);
    s.phi = detail::draw_positive_sigma(p, params.min_sigma_deg, rng);
    return s;
}

/// Shapes the lobe's segments: power = R(k, h) * lobe total power. The
/// segments are a profile, so their sum exceeds the lobe total whenever the
/// lobe has more than one segment.
inline void segment_powers(SpatialLobe& lobe, const SpatialParams& params) {
    for (auto& s : lobe.segments) {
        s.gain = segment_gain(s.azimuth_offset, s.elevation_offset, lobe.sigma_theta_deg, lobe.sigma_phi_deg,
                              params.segment_floor);
        s.power_mw = s.gain * lobe.total_power_mw;
    }
}

/// Dense azimuth x elevation grid of linear powers, 1-degree cells.
class AngularSpectrum {
public:
    AngularSpectrum() : cells_(static_cast<std::size_t>(kAzimuthBins * kElevationBins), 0.0) {}

    static std::size_t cell(int azimuth_deg, int elevation_deg) {
        return static_cast<std::size_t>(wrap_azimuth(azimuth_deg)) * kElevationBins +
               static_cast<std::size_t>(elevation_deg - kMinElevation);
    }

    double at(int azimuth_deg, int elevation_deg) const { return cells_[cell(azimuth_deg, elevation_deg)]; }
    void add(int azimuth_deg, int elevation_deg, double p) { cells_[cell(azimuth_deg, elevation_deg)] += p; }

    double total() const {
        double t = 0.0;
        for (double v : cells_) t += v;
        return t;
    }

    double peak() const { return *std::max_element(cells_.begin(), cells_.end()); }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(std::count_if(cells_.begin(), cells_.end(), [](double v) { return v != 0.0; }));
    }

    std::span<const double> cells() const { return cells_; }

private:
    std::vector<double> cells_;  // azimuth-major
};

/// Superposes the lobes' shaped segments. When `lobe_powers` is given it
/// replaces each lobe's total power (used for noise-floor pruned views).
inline AngularSpectrum assemble_spectrum(std::span<const SpatialLobe> lobes,
                                         std::span<const double> lobe_powers = {}) {
    if (!lobe_powers.empty() && lobe_powers.size() != lobes.size()) {
        throw InvalidParameter("assemble_spectrum: one power per lobe required");
    }
    AngularSpectrum spec;
    for (std::size_t i = 0; i < lobes.size(); ++i) {
        for (const auto& s : lobes[i].segments) {
            const double p = lobe_powers.empty() ? s.power_mw : s.gain * lobe_powers[i];
            spec.add(s.azimuth_deg, s.elevation_deg, p);
        }
    }
    return spec;
}

}  // namespace sscm
