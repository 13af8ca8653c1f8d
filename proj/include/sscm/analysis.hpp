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

/// \file analysis.hpp
/// Measurement-side processing applied to generated channels: omnidirectional
/// PDP synthesis, time-cluster partitioning with a minimum void interval,
/// relative-threshold lobe detection on angular spectra, RMS delay and lobe
/// angular spreads, and log-domain exponential decay fits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "sscm/channel.hpp"
#include "sscm/spatial.hpp"

namespace sscm {

struct PdpTap {
    double time_ns = 0.0;
    double power_mw = 0.0;
};

struct PowerDelayProfile {
    enum class Origin { Absolute, Excess };

    std::vector<PdpTap> taps;  // strictly increasing time, positive power
    Origin origin = Origin::Absolute;

    double total_power() const {
        double t = 0.0;
        for (const auto& p : taps) t += p.power_mw;
        return t;
    }
};

/// Subpath (absolute time, power) pairs sorted by time; taps arriving at the
/// same instant are merged by adding powers. With `drop_below_floor`,
/// subpaths flagged under the noise floor are left out.
inline PowerDelayProfile synthesize_pdp(const ChannelRealization& ch, bool drop_below_floor = false) {
    std::vector<PdpTap> raw;
    raw.reserve(ch.subpath_count());
    for (const auto& c : ch.clusters) {
        for (const auto& s : c.subpaths) {
            if (drop_below_floor && s.below_floor) continue;
            raw.push_back({s.abs_time_ns, s.power_mw});
        }
    }
    std::stable_sort(raw.begin(), raw.end(), [](const PdpTap& a, const PdpTap& b) { return a.time_ns < b.time_ns; });
    PowerDelayProfile pdp;
    for (const auto& t : raw) {
        if (!pdp.taps.empty() && pdp.taps.back().time_ns == t.time_ns) {
            pdp.taps.back().power_mw += t.power_mw;
        } else {
            pdp.taps.push_back(t);
        }
    }
    return pdp;
}

/// Power-weighted RMS spread of excess delay (relative to the first tap).
inline double rms_delay_spread(const PowerDelayProfile& pdp) {
    if (pdp.taps.empty()) {
        throw InvalidParameter("rms_delay_spread: empty power delay profile");
    }
    const double t0 = pdp.taps.front().time_ns;
    double p = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (const auto& tap : pdp.taps) {
        const double t = tap.time_ns - t0;
        p += tap.power_mw;
        m1 += tap.power_mw * t;
        m2 += tap.power_mw * t * t;
    }
    m1 /= p;
    m2 /= p;
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

struct ClusterExtent {
    double start_ns = 0.0;
    double end_ns = 0.0;
    double power_mw = 0.0;
    std::size_t first_tap = 0;
    std::size_t tap_count = 0;
};

/// Maximal runs of taps whose consecutive gaps are below `void_ns`.
inline std::vector<ClusterExtent> partition_clusters(const PowerDelayProfile& pdp, double void_ns = 25.0) {
    if (pdp.taps.empty()) {
        throw InvalidParameter("partition_clusters: empty power delay profile");
    }
    std::vector<ClusterExtent> out;
    for (std::size_t i = 0; i < pdp.taps.size(); ++i) {
        const auto& t = pdp.taps[i];
        if (out.empty() || t.time_ns - out.back().end_ns >= void_ns) {
            out.push_back({t.time_ns, t.time_ns, 0.0, i, 0});
        }
        ClusterExtent& c = out.back();
        c.end_ns = t.time_ns;
        c.power_mw += t.power_mw;
        ++c.tap_count;
    }
    return out;
}

struct DecayPoint {
    double delay_ns = 0.0;
    double power = 0.0;  // normalized, in (0, 1]
};

struct DecayFit {
    double p0 = 0.0;
    double decay_ns = 0.0;
};

/// Least squares on ln(power) = ln(p0) - delay / decay.
/// A flat or rising trend yields an infinite or negative decay constant.
inline DecayFit fit_exponential_decay(std::span<const DecayPoint> points) {
    if (points.size() < 2) {
        throw InvalidParameter("fit_exponential_decay: need at least two points");
    }
    // centred sums keep the normal equations well conditioned
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : points) {
        if (!(p.power > 0.0)) {
            throw InvalidParameter("fit_exponential_decay: powers must be positive");
        }
        mx += p.delay_ns;
        my += std::log(p.power);
    }
    const double n = static_cast<double>(points.size());
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : points) {
        const double dx = p.delay_ns - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.power) - my);
    }
    if (sxx == 0.0) {
        throw InvalidParameter("fit_exponential_decay: all delays identical");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    DecayFit fit;
    fit.p0 = std::exp(intercept);
    fit.decay_ns = -1.0 / slope;
    return fit;
}

struct SpectrumCell {
    int azimuth_deg = 0;
    int elevation_deg = 0;
    double power_mw = 0.0;
};

struct LobeRegion {
    std::vector<SpectrumCell> cells;

    double power() const {
        double p = 0.0;
        for (const auto& c : cells) p += c.power_mw;
        return p;
    }
};

/// Edge-connected (azimuth wraps) groups of cells at or above
/// peak * 10^(threshold_db / 10). Regions come out in scan order.
inline std::vector<LobeRegion> threshold_lobes(const AngularSpectrum& spectrum, double threshold_db = -10.0) {
    const double peak = spectrum.peak();
    if (!(peak > 0.0)) {
        throw InvalidParameter("threshold_lobes: spectrum has no power");
    }
    const double level = peak * std::pow(10.0, threshold_db / 10.0);
    const auto cells = spectrum.cells();
    std::vector<char> seen(cells.size(), 0);
    std::vector<LobeRegion> regions;
    std::vector<std::pair<int, int>> stack;

    for (int az = 0; az < kAzimuthBins; ++az) {
        for (int el = kMinElevation; el <= kMaxElevation; ++el) {
            const std::size_t idx = AngularSpectrum::cell(az, el);
            if (seen[idx] || !(cells[idx] >= level)) continue;
            LobeRegion region;
            seen[idx] = 1;
            stack.assign(1, {az, el});
            while (!stack.empty()) {
                const auto [a, e] = stack.back();
                stack.pop_back();
                region.cells.push_back({a, e, cells[AngularSpectrum::cell(a, e)]});
                const std::pair<int, int> next[] = {
                    {wrap_azimuth(a - 1), e}, {wrap_azimuth(a + 1), e}, {a, e - 1}, {a, e + 1}};
                for (const auto& [na, ne] : next) {
                    if (ne < kMinElevation || ne > kMaxElevation) continue;
                    const std::size_t j = AngularSpectrum::cell(na, ne);
                    if (!seen[j] && cells[j] >= level) {
                        seen[j] = 1;
                        stack.push_back({na, ne});
                    }
                }
            }
            regions.push_back(std::move(region));
        }
    }
    return regions;
}

struct AngularSpread {
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

/// Power-weighted RMS spread about the power-weighted mean direction.
/// Azimuth uses the circular mean and deviations wrapped to (-180, 180].
inline AngularSpread rms_lobe_angular_spread(const LobeRegion& lobe) {
    if (lobe.cells.empty()) {
        throw InvalidParameter("rms_lobe_angular_spread: empty lobe");
    }
    constexpr double deg = std::numbers::pi / 180.0;
    double p = 0.0;
    double cx = 0.0;
    double sy = 0.0;
    double me = 0.0;
    for (const auto& c : lobe.cells) {
        p += c.power_mw;
        cx += c.power_mw * std::cos(c.azimuth_deg * deg);
        sy += c.power_mw * std::sin(c.azimuth_deg * deg);
        me += c.power_mw * c.elevation_deg;
    }
    me /= p;
    const double mean_az = std::atan2(sy, cx) / deg;
    double va = 0.0;
    double ve = 0.0;
    for (const auto& c : lobe.cells) {
        double d = std::fmod(c.azimuth_deg - mean_az, 360.0);
        if (d <= -180.0) d += 360.0;
        if (d > 180.0) d -= 360.0;
        va += c.power_mw * d * d;
        const double de = c.elevation_deg - me;
        ve += c.power_mw * de * de;
    }
    return {std::sqrt(va / p), std::sqrt(ve / p)};
}

/// Secondary statistics of one realization.
struct ChannelStats {
    bool has_taps = false;  // false when every subpath fell below the floor
    double rms_delay_spread_ns = 0.0;
    std::vector<AngularSpread> aoa_lobe_spreads;
    int clusters = 0;            // generated N
    int detected_clusters = 0;   // from partitioning the PDP
    int aod_lobes = 0;
    int aoa_lobes = 0;
    int detected_aoa_lobes = 0;
    std::vector<DecayPoint> cluster_points;  // (tau_n, P_n / P_r)
    std::vector<DecayPoint> subpath_points;  // (rho_mn, Pi_mn / P_n)
};

struct AnalysisOptions {
    bool validation_mode = true;  // drop subpaths below the noise floor
    double void_ns = 25.0;
    double threshold_db = -10.0;
};

/// PDP, clustering, decay samples and AOA lobe spreads for one channel.
inline ChannelStats analyze_channel(const ChannelRealization& ch, const AnalysisOptions& opt = {}) {
    ChannelStats st;
    st.clusters = static_cast<int>(ch.clusters.size());
    st.aod_lobes = static_cast<int>(ch.aod_lobes.size());
    st.aoa_lobes = static_cast<int>(ch.aoa_lobes.size());

    const PowerDelayProfile pdp = synthesize_pdp(ch, opt.validation_mode);
    if (!pdp.taps.empty()) {
        st.has_taps = true;
        st.rms_delay_spread_ns = rms_delay_spread(pdp);
        st.detected_clusters = static_cast<int>(partition_clusters(pdp, opt.void_ns).size());
    }

    // decay samples come from the generated powers; a cluster counts once any
    // of its subpaths is kept
    const double pr = ch.link.omni_rx_power_mw();
    for (const auto& c : ch.clusters) {
        bool kept = false;
        for (const auto& s : c.subpaths) {
            if (opt.validation_mode && s.below_floor) continue;
            kept = true;
            st.subpath_points.push_back({s.intra_delay_ns, s.power_mw / c.power_mw});
        }
        if (kept) st.cluster_points.push_back({c.excess_delay_ns, c.power_mw / pr});
    }

    // AOA lobe powers restricted to the subpaths that survive the floor
    std::vector<double> aoa_power(ch.aoa_lobes.size(), 0.0);
    for (const auto& c : ch.clusters) {
        for (const auto& s : c.subpaths) {
            if (opt.validation_mode && s.below_floor) continue;
            aoa_power[static_cast<std::size_t>(ch.lobes_of(s.cluster_index, s.subpath_index).aoa - 1)] += s.power_mw;
        }
    }
    const AngularSpectrum spec = assemble_spectrum(std::span<const SpatialLobe>(ch.aoa_lobes), aoa_power);
    if (spec.peak() > 0.0) {
        const auto regions = threshold_lobes(spec, opt.threshold_db);
        st.detected_aoa_lobes = static_cast<int>(regions.size());
        for (const auto& r : regions) {
            st.aoa_lobe_spreads.push_back(rms_lobe_angular_spread(r));
        }
    }
    return st;
}

inline double median(std::vector<double> v) {
    if (v.empty()) {
        throw InvalidParameter("median: empty sample");
    }
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

inline double mean(std::span<const double> v) {
    if (v.empty()) {
        throw InvalidParameter("mean: empty sample");
    }
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

/// Pooled secondary statistics over an ensemble. Feed realizations in index
/// order with `add`, then call `finalize`.
struct EnsembleStats {
    std::size_t realizations = 0;
    std::size_t empty_realizations = 0;  // no tap above the floor
    std::vector<double> rms_delay_spreads_ns;
    std::vector<double> rms_lobe_az_spreads_deg;
    std::vector<double> rms_lobe_el_spreads_deg;
    std::vector<int> cluster_counts;
    std::vector<int> lobe_counts_aod;
    std::vector<int> lobe_counts_aoa;
    std::vector<int> detected_aoa_lobe_counts;
    std::vector<DecayPoint> cluster_points;
    std::vector<DecayPoint> subpath_points;

    double fitted_big_gamma_ns = 0.0;  // cluster decay
    double fitted_p0 = 0.0;
    double fitted_gamma_ns = 0.0;      // subpath decay
    double fitted_pi0 = 0.0;

    void add(const ChannelStats& s) {
        ++realizations;
        cluster_counts.push_back(s.clusters);
        lobe_counts_aod.push_back(s.aod_lobes);
        lobe_counts_aoa.push_back(s.aoa_lobes);
        detected_aoa_lobe_counts.push_back(s.detected_aoa_lobes);
        if (!s.has_taps) {
            ++empty_realizations;
            return;
        }
        rms_delay_spreads_ns.push_back(s.rms_delay_spread_ns);
        for (const auto& a : s.aoa_lobe_spreads) {
            rms_lobe_az_spreads_deg.push_back(a.azimuth_deg);
            rms_lobe_el_spreads_deg.push_back(a.elevation_deg);
        }
        cluster_points.insert(cluster_points.end(), s.cluster_points.begin(), s.cluster_points.end());
        subpath_points.insert(subpath_points.end(), s.subpath_points.begin(), s.subpath_points.end());
    }

    /// Fits the decay models; fields stay NaN when there are too few points
    /// or the delays do not vary.
    void finalize() {
        const auto try_fit = [](std::span<const DecayPoint> pts) {
            try {
                return fit_exponential_decay(pts);
            } catch (const InvalidParameter&) {
                return DecayFit{std::nan(""), std::nan("")};
            }
        };
        const DecayFit c = try_fit(cluster_points);
        fitted_p0 = c.p0;
        fitted_big_gamma_ns = c.decay_ns;
        const DecayFit s = try_fit(subpath_points);
        fitted_pi0 = s.p0;
        fitted_gamma_ns = s.decay_ns;
    }

    double median_rms_delay_spread_ns() const {
        return rms_delay_spreads_ns.empty() ? std::nan("") : median(rms_delay_spreads_ns);
    }
    double mean_lobe_az_spread_deg() const {
        return rms_lobe_az_spreads_deg.empty() ? std::nan("") : mean(rms_lobe_az_spreads_deg);
    }
    double mean_lobe_el_spread_deg() const {
        return rms_lobe_el_spreads_deg.empty() ? std::nan("") : mean(rms_lobe_el_spreads_deg);
    }
};

}  // namespace sscm
