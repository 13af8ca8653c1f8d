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

/// \file temporal.hpp
/// Temporal skeleton of a channel: time clusters, intra-cluster subpaths,
/// their excess delays, powers, phases and absolute arrival times.
///
/// Each stochastic operation comes in two forms: a pure function taking the
/// random variates explicitly (used for hand-checked cases) and a wrapper
/// that draws those variates from an `RngStream`.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

#include "sscm/params.hpp"
#include "sscm/rng.hpp"

namespace sscm {

struct Subpath {
    int cluster_index = 0;   // n, 1-based
    int subpath_index = 0;   // m, 1-based
    double intra_delay_ns = 0.0;
    double power_mw = 0.0;
    double phase_rad = 0.0;
    double abs_time_ns = 0.0;
    /// Power below the validation noise floor; kept, but excluded from
    /// validation statistics.
    bool below_floor = false;
};

struct TimeCluster {
    int index = 0;  // n, 1-based
    double excess_delay_ns = 0.0;
    double power_mw = 0.0;
    std::vector<Subpath> subpaths;

    double last_intra_delay_ns() const {
        return subpaths.empty() ? 0.0 : subpaths.back().intra_delay_ns;
    }
};

struct Counts {
    int clusters = 1;
    int aod_lobes = 1;
    int aoa_lobes = 1;
};

/// min{l_max, max{1, min{draw, N}}}
inline int lobe_count(std::int64_t draw, int clusters, int l_max) {
    const std::int64_t bounded = std::max<std::int64_t>(1, std::min<std::int64_t>(draw, clusters));
    return static_cast<int>(std::min<std::int64_t>(l_max, bounded));
}

inline Counts draw_counts(const TemporalParams& params, double mu_aod, double mu_aoa, int l_max,
                          RngStream& rng) {
    if (l_max < 1) {
        throw InvalidParameter("draw_counts: l_max must be >= 1");
    }
    Counts c;
    c.clusters = static_cast<int>(rng.discrete_uniform(1, params.n_max));
    const auto a = rng.poisson(mu_aod + 0.2);
    const auto b = rng.poisson(mu_aoa + 0.1);
    c.aod_lobes = lobe_count(a, c.clusters, l_max);
    c.aoa_lobes = lobe_count(b, c.clusters, l_max);
    return c;
}

inline std::vector<int> draw_subpath_counts(int clusters, const TemporalParams& params, RngStream& rng) {
    if (clusters < 1) {
        throw InvalidParameter("draw_subpath_counts: need at least one cluster");
    }
    std::vector<int> counts(static_cast<std::size_t>(clusters));
    for (auto& m : counts) {
        m = static_cast<int>(rng.discrete_uniform(1, params.m_max));
    }
    return counts;
}

/// rho_m = (resolution * (m - 1))^(1 + x), with the base in ns.
inline std::vector<double> subpath_delays(int subpaths, double x, double resolution_ns) {
    if (subpaths < 1) {
        throw InvalidParameter("subpath_delays: need at least one subpath");
    }
    std::vector<double> rho(static_cast<std::size_t>(subpaths));
    for (int m = 0; m < subpaths; ++m) {
        rho[static_cast<std::size_t>(m)] = std::pow(resolution_ns * m, 1.0 + x);
    }
    return rho;
}

/// Draws one exponent X ~ U(0, x_max) for the whole cluster.
inline std::vector<double> subpath_delays(int subpaths, const TemporalParams& params, RngStream& rng) {
    const double x = rng.uniform(0.0, params.x_max);
    return subpath_delays(subpaths, x, params.subpath_resolution_ns());
}

/// tau_1 = 0; tau_n = tau_{n-1} + rho_last_{n-1} + offsets_n + void.
/// `offsets` are the sorted, min-subtracted exponential draws.
inline std::vector<double> cluster_delays(std::span<const double> last_subpath_delays,
                                          std::span<const double> offsets, double void_ns) {
    if (last_subpath_delays.empty() || offsets.size() != last_subpath_delays.size()) {
        throw InvalidParameter("cluster_delays: size mismatch");
    }
    std::vector<double> tau(offsets.size(), 0.0);
    for (std::size_t n = 1; n < tau.size(); ++n) {
        tau[n] = tau[n - 1] + last_subpath_delays[n - 1] + offsets[n] + void_ns;
    }
    return tau;
}

inline std::vector<double> cluster_delays(int clusters, std::span<const double> last_subpath_delays,
                                          const TemporalParams& params, RngStream& rng) {
    if (clusters < 1 || last_subpath_delays.size() != static_cast<std::size_t>(clusters)) {
        throw InvalidParameter("cluster_delays: need one last-subpath delay per cluster");
    }
    std::vector<double> raw(static_cast<std::size_t>(clusters));
    for (auto& t : raw) {
        t = rng.exponential(params.mu_tau_ns);
    }
    std::stable_sort(raw.begin(), raw.end());
    const double lowest = raw.front();
    for (auto& t : raw) {
        t -= lowest;
    }
    return cluster_delays(last_subpath_delays, raw, params.inter_cluster_void_ns);
}

namespace detail {

// x_k = p0 * exp(-delay_k / decay) * 10^(shadow_k / 10), rescaled to sum to total.
inline std::vector<double> decaying_powers(std::span<const double> delays, std::span<const double> shadows_db,
                                           double p0, double decay_ns, double total) {
    if (delays.empty() || delays.size() != shadows_db.size()) {
        throw InvalidParameter("power normalization: size mismatch");
    }
    std::vector<double> p(delays.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = p0 * std::exp(-delays[k] / decay_ns) * std::pow(10.0, shadows_db[k] / 10.0);
    }
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) {
        v = v / sum * total;
    }
    return p;
}

inline std::vector<double> normal_draws(std::size_t count, double sigma, RngStream& rng) {
    std::vector<double> z(count);
    for (auto& v : z) {
        v = rng.normal(0.0, sigma);
    }
    return z;
}

}  // namespace detail

inline std::vector<double> cluster_powers(std::span<const double> taus, std::span<const double> shadows_db,
                                          double rx_power_mw, const TemporalParams& params) {
    if (!(rx_power_mw > 0.0)) {
        throw InvalidParameter("cluster_powers: received power must be > 0");
    }
    return detail::decaying_powers(taus, shadows_db, params.cluster_p0, params.cluster_decay_ns, rx_power_mw);
}

inline std::vector<double> cluster_powers(std::span<const double> taus, double rx_power_mw,
                                          const TemporalParams& params, RngStream& rng) {
    const auto z = detail::normal_draws(taus.size(), params.cluster_shadow_sigma_db, rng);
    return cluster_powers(taus, z, rx_power_mw, params);
}

/// Normalized over the M_n subpaths of one cluster so they sum to its power.
inline std::vector<double> subpath_powers(std::span<const double> rhos, std::span<const double> shadows_db,
                                          double cluster_power_mw, const TemporalParams& params) {
    if (!(cluster_power_mw > 0.0)) {
        throw InvalidParameter("subpath_powers: cluster power must be > 0");
    }
    return detail::decaying_powers(rhos, shadows_db, params.subpath_p0, params.subpath_decay_ns,
                                   cluster_power_mw);
}

inline std::vector<double> subpath_powers(std::span<const double> rhos, double cluster_power_mw,
                                          const TemporalParams& params, RngStream& rng) {
    const auto u = detail::normal_draws(rhos.size(), params.subpath_shadow_sigma_db, rng);
    return subpath_powers(rhos, u, cluster_power_mw, params);
}

/// Wraps an angle in radians into [0, 2*pi).
inline double wrap_two_pi(double phase) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phase, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    return r >= two_pi ? 0.0 : r;
}

/// phi_m = phi_1 + 2 pi f rho_m (rho in ns, converted to s), modulo 2 pi.
inline std::vector<double> subpath_phases(std::span<const double> rhos, double first_phase_rad,
                                          double carrier_hz) {
    std::vector<double> phi(rhos.size());
    for (std::size_t m = 0; m < rhos.size(); ++m) {
        const double cycles = carrier_hz * rhos[m] * 1e-9;
        // keep only the fractional cycle so large f*rho does not lose precision
        const double frac = cycles - std::floor(cycles);
        phi[m] = wrap_two_pi(first_phase_rad + 2.0 * std::numbers::pi * frac);
    }
    return phi;
}

inline std::vector<double> subpath_phases(std::span<const double> rhos, const TemporalParams& params,
                                          RngStream& rng) {
    const double first = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return subpath_phases(rhos, first, params.carrier_hz);
}

/// t_{m,n} = t0 + tau_n + rho_{m,n}
inline void absolute_times(std::vector<TimeCluster>& clusters, double t0_ns) {
    if (!(t0_ns >= 0.0)) {
        throw InvalidParameter("absolute_times: t0 must be >= 0");
    }
    for (auto& c : clusters) {
        for (auto& s : c.subpaths) {
            s.abs_time_ns = t0_ns + c.excess_delay_ns + s.intra_delay_ns;
        }
    }
}

/// Temporal half of a channel with `clusters` time clusters and total power
/// `rx_power_mw`: subpath counts, delays, powers, phases and arrival times,
/// drawn in that order.
inline std::vector<TimeCluster> generate_clusters(int clusters, double rx_power_mw, double t0_ns,
                                                  const TemporalParams& params, RngStream& rng) {
    const auto counts = draw_subpath_counts(clusters, params, rng);

    std::vector<std::vector<double>> rhos;
    rhos.reserve(counts.size());
    std::vector<double> last(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) {
        rhos.push_back(subpath_delays(counts[n], params, rng));
        last[n] = rhos.back().back();
    }

    const auto taus = cluster_delays(clusters, last, params, rng);
    const auto cluster_p = cluster_powers(taus, rx_power_mw, params, rng);

    std::vector<std::vector<double>> sub_p;
    sub_p.reserve(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) {
        sub_p.push_back(subpath_powers(rhos[n], cluster_p[n], params, rng));
    }

    const double floor_mw = std::pow(10.0, params.min_subpath_power_dbm / 10.0);
    std::vector<TimeCluster> out(counts.size());
    for (std::size_t n = 0; n < counts.size(); ++n) {
        const auto phases = subpath_phases(rhos[n], params, rng);
        TimeCluster& c = out[n];
        c.index = static_cast<int>(n) + 1;
        c.excess_delay_ns = taus[n];
        c.power_mw = cluster_p[n];
        c.subpaths.resize(rhos[n].size());
        for (std::size_t m = 0; m < rhos[n].size(); ++m) {
            Subpath& s = c.subpaths[m];
            s.cluster_index = c.index;
            s.subpath_index = static_cast<int>(m) + 1;
            s.intra_delay_ns = rhos[n][m];
            s.power_mw = sub_p[n][m];
            s.phase_rad = phases[m];
            s.below_floor = s.power_mw < floor_mw;
        }
    }
    absolute_times(out, t0_ns);
    return out;
}

}  // namespace sscm
