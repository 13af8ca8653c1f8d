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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any of them fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sscm/sscm.hpp"

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 1;
constexpr std::uint64_t kEnsemble = 10000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Report {
public:
    void record(const std::string& name, const Outcome& o) {
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        failures_ += o.pass ? 0 : 1;
    }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

bool rel_close(double a, double b, double tol) { return std::fabs(a - b) <= tol * std::fabs(b); }

// ---- per-realization property checks -------------------------------------

struct PropertyTally {
    std::uint64_t checked = 0;
    std::uint64_t conservation_bad = 0;
    std::uint64_t partition_bad = 0;
    std::uint64_t structure_bad = 0;
    std::string first_conservation;
    std::string first_partition;
    std::string first_structure;
};

bool conserves_power(const sscm::ChannelRealization& ch) {
    const double pr = ch.link.omni_rx_power_mw();
    double temporal = 0.0;
    for (const auto& c : ch.clusters)
        for (const auto& s : c.subpaths) temporal += s.power_mw;
    double aod = 0.0;
    double aoa = 0.0;
    for (const auto& l : ch.aod_lobes) aod += l.total_power_mw;
    for (const auto& l : ch.aoa_lobes) aoa += l.total_power_mw;
    return rel_close(temporal, pr, 1e-9) && rel_close(aod, pr, 1e-9) && rel_close(aoa, pr, 1e-9);
}

bool partition_round_trips(const sscm::ChannelRealization& ch, double void_ns) {
    const auto parts = sscm::partition_clusters(sscm::synthesize_pdp(ch), void_ns);
    if (parts.size() != ch.clusters.size()) return false;
    for (std::size_t n = 0; n < parts.size(); ++n) {
        if (!rel_close(parts[n].power_mw, ch.clusters[n].power_mw, 1e-9)) return false;
    }
    return true;
}

bool structurally_sound(const sscm::ChannelRealization& ch, const sscm::TemporalParams& tp) {
    const int n = static_cast<int>(ch.clusters.size());
    if (n < 1 || n > tp.n_max) return false;
    const int lmax = std::min(5, n);
    const auto la = static_cast<int>(ch.aod_lobes.size());
    const auto lb = static_cast<int>(ch.aoa_lobes.size());
    if (la < 1 || la > lmax || lb < 1 || lb > lmax) return false;
    const double res = tp.subpath_resolution_ns();
    for (std::size_t k = 0; k < ch.clusters.size(); ++k) {
        const auto& c = ch.clusters[k];
        const int m = static_cast<int>(c.subpaths.size());
        if (m < 1 || m > tp.m_max) return false;
        if (c.subpaths.front().intra_delay_ns != 0.0) return false;
        if (m >= 2) {
            // the second delay pins the cluster's exponent; all others must follow it
            const double x = std::log(c.subpaths[1].intra_delay_ns) / std::log(res) - 1.0;
            if (x < -1e-12 || x > tp.x_max + 1e-12) return false;
            for (int i = 1; i < m; ++i) {
                const double expect = std::pow(res * i, 1.0 + x);
                if (!rel_close(c.subpaths[static_cast<std::size_t>(i)].intra_delay_ns, expect, 1e-9)) return false;
                const double gap = c.subpaths[static_cast<std::size_t>(i)].intra_delay_ns -
                                   c.subpaths[static_cast<std::size_t>(i - 1)].intra_delay_ns;
                if (gap < res * (1.0 - 1e-12)) return false;
            }
        }
        if (k > 0) {
            const auto& prev = ch.clusters[k - 1];
            const double gap = c.excess_delay_ns - (prev.excess_delay_ns + prev.last_intra_delay_ns());
            if (gap < tp.inter_cluster_void_ns * (1.0 - 1e-12)) return false;
        }
    }
    return true;
}

PropertyTally check_properties(const sscm::ModelParams& params) {
    PropertyTally t;
    sscm::for_each_realization(params, kSeed, kEnsemble, sscm::default_thread_count(),
                               [&](sscm::ChannelRealization&& ch) {
                                   ++t.checked;
                                   const std::string id = "realization " + std::to_string(ch.id);
                                   if (!conserves_power(ch) && t.conservation_bad++ == 0) t.first_conservation = id;
                                   if (!partition_round_trips(ch, params.temporal.inter_cluster_void_ns) &&
                                       t.partition_bad++ == 0)
                                       t.first_partition = id;
                                   if (!structurally_sound(ch, params.temporal) && t.structure_bad++ == 0)
                                       t.first_structure = id;
                               });
    return t;
}

Outcome tally_outcome(std::uint64_t bad, std::uint64_t total, const std::string& first) {
    Outcome o;
    o.pass = bad == 0;
    o.detail = std::to_string(total - bad) + "/" + std::to_string(total) + " realizations hold";
    if (bad) o.detail += ", first violation at " + first;
    return o;
}

// ---- sampler moments -----------------------------------------------------

struct Moments {
    double mean = 0.0;
    double var = 0.0;
    double m4 = 0.0;  // fourth central moment
};

Moments moments_of(const std::function<double()>& draw, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = draw();
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(n);
    for (double x : v) {
        const double d = x - m.mean;
        m.var += d * d;
        m.m4 += d * d * d * d;
    }
    m.var /= static_cast<double>(n - 1);
    m.m4 /= static_cast<double>(n);
    return m;
}

// checks mean and std against the targets within 3 standard errors
bool moments_ok(const Moments& m, double mu, double sd, std::size_t n, std::string& why, const char* name) {
    const double se_mean = sd / std::sqrt(static_cast<double>(n));
    const double se_var = std::sqrt(std::max(0.0, m.m4 - sd * sd * sd * sd * (n - 3.0) / (n - 1.0)) / n);
    const double se_sd = se_var / (2.0 * sd);
    const bool ok = std::fabs(m.mean - mu) <= 3 * se_mean && std::fabs(std::sqrt(m.var) - sd) <= 3 * se_sd;
    if (!ok) why += std::string(name) + fmt(" mean %.5g std %.5g; ", m.mean, std::sqrt(m.var));
    return ok;
}

Outcome sampler_suite() {
    constexpr std::size_t n = 1000000;
    sscm::RngStream rng(2024);
    std::string why;
    bool ok = true;
    auto run = [&](const char* name, const std::function<double()>& f, double mu, double sd) {
        ok = moments_ok(moments_of(f, n), mu, sd, n, why, name) && ok;
    };
    run("uniform(2,5)", [&] { return rng.uniform(2.0, 5.0); }, 3.5, 3.0 / std::sqrt(12.0));
    run("du[1,30]", [&] { return static_cast<double>(rng.discrete_uniform(1, 30)); }, 15.5,
        std::sqrt((30.0 * 30.0 - 1.0) / 12.0));
    run("exp(83)", [&] { return rng.exponential(83.0); }, 83.0, 83.0);
    run("normal(-4.9,4.5)", [&] { return rng.normal(-4.9, 4.5); }, -4.9, 4.5);
    run("normal(0,9.7)", [&] { return rng.normal(0.0, 9.7); }, 0.0, 9.7);
    run("poisson(1.8)", [&] { return static_cast<double>(rng.poisson(1.8)); }, 1.8, std::sqrt(1.8));
    run("poisson(25)", [&] { return static_cast<double>(rng.poisson(25.0)); }, 25.0, 5.0);

    // DLN(32, 18): rounding adds 1/12 to the variance; the mean has to land on 32 +/- 1
    const Moments d = moments_of([&] { return static_cast<double>(rng.discrete_lognormal(32.0, 18.0)); }, n);
    const bool dln_ok = std::fabs(d.mean - 32.0) <= 1.0 && std::fabs(std::sqrt(d.var) - 18.0) <= 0.5;
    if (!dln_ok) why += fmt("dln(32,18) mean %.5g std %.5g; ", d.mean, std::sqrt(d.var));
    ok = ok && dln_ok;

    Outcome o;
    o.pass = ok;
    o.detail = ok ? fmt("8 samplers within 3 standard errors over %.0f draws; DLN(32,18) mean %.4f", n, d.mean)
                  : "out of tolerance: " + why;
    return o;
}

// ---- determinism through the CLI -----------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SSCM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / ("sscm_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    Outcome o;
    std::size_t bytes = 0;
    for (const char* format : {"tabular", "structured"}) {
        const std::string name = std::string(format) == "tabular" ? "taps.csv" : "realizations.jsonl";
        const std::string common = std::string("generate --seed 42 --ensemble-size 1000 --format ") + format;
        const fs::path a = root / (std::string(format) + "_a");
        const fs::path b = root / (std::string(format) + "_b");
        if (run_cli(common + " --out " + a.string()) != 0 || run_cli(common + " --threads 1 --out " + b.string()) != 0) {
            o.pass = false;
            o.detail = std::string("generate failed for format ") + format;
            break;
        }
        const std::string x = slurp(a / name);
        if (x.empty() || x != slurp(b / name)) {
            o.pass = false;
            o.detail = name + " differs between runs";
            break;
        }
        bytes += x.size();
    }
    fs::remove_all(root);
    if (o.pass) o.detail = "two runs byte-identical for tabular and structured output (" + std::to_string(bytes) + " bytes)";
    return o;
}

}  // namespace

int main() {
    const sscm::ModelParams params;
    Report report;

    // statistics over the validation-mode ensemble
    const sscm::EnsembleStats stats = sscm::run_ensemble(params, kSeed, kEnsemble);
    {
        const double ds = stats.median_rms_delay_spread_ns();
        report.record("median RMS delay spread",
                      {ds >= 27.0 && ds <= 37.0, fmt("%.3f ns, band [27, 37], %.0f channels with taps", ds,
                                                     static_cast<double>(stats.rms_delay_spreads_ns.size()))});
    }
    {
        const double az = stats.mean_lobe_az_spread_deg();
        const double el = stats.mean_lobe_el_spread_deg();
        const bool ok = az >= 5.5 && az <= 8.5 && el >= 5.5 && el <= 8.5;
        report.record("mean RMS lobe angular spreads",
                      {ok, fmt("azimuth %.3f deg, elevation %.3f deg, band [5.5, 8.5], %.0f AOA lobes", az, el,
                               static_cast<double>(stats.rms_lobe_az_spreads_deg.size()))});
    }

    const PropertyTally props = check_properties(params);
    report.record("power conservation", tally_outcome(props.conservation_bad, props.checked, props.first_conservation));
    report.record("cluster partition round trip",
                  tally_outcome(props.partition_bad, props.checked, props.first_partition));

    {
        const bool big_gamma = stats.fitted_big_gamma_ns >= 34.6 && stats.fitted_big_gamma_ns <= 64.2;
        const bool small_gamma = stats.fitted_gamma_ns >= 11.8 && stats.fitted_gamma_ns <= 22.0;
        const bool p0 = std::fabs(stats.fitted_p0 - 0.883) <= 0.15;
        const bool pi0 = std::fabs(stats.fitted_pi0 - 0.342) <= 0.10;
        std::string detail = fmt("cluster decay %.3f ns in [34.6, 64.2]; cluster intercept %.4f in [0.733, 1.033]; ",
                     stats.fitted_big_gamma_ns, stats.fitted_p0) +
                 fmt("subpath decay %.3f ns in [11.8, 22.0]; subpath intercept %.4f in [0.242, 0.442]",
                     stats.fitted_gamma_ns, stats.fitted_pi0);
        std::string failed;
        if (!big_gamma) failed += " cluster-decay";
        if (!p0) failed += " cluster-intercept";
        if (!small_gamma) failed += " subpath-decay";
        if (!pi0) failed += " subpath-intercept";
        if (!failed.empty()) detail += "; out of band:" + failed;
        report.record("decay constant recovery", {big_gamma && small_gamma && p0 && pi0, detail});
    }

    {
        const sscm::LinkConfig link;
        const double pl = sscm::path_loss_nlos(link, 1.0, 0.0);
        sscm::RngStream rng(kSeed);
        constexpr int n = 1000000;
        double s = 0.0;
        double s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = sscm::draw_link(link, rng).shadow_db;
            s += x;
            s2 += x * x;
        }
        const double m = s / n;
        const double sd = std::sqrt((s2 - n * m * m) / (n - 1));
        const bool ok = pl == 61.4 && std::fabs(sd - 9.7) <= 0.1;
        report.record("path loss and shadowing",
                      {ok, fmt("PL(1 m) = %.17g dB; shadow std %.4f dB over %.0f draws", pl, sd, n)});
    }

    report.record("structural bounds", tally_outcome(props.structure_bad, props.checked, props.first_structure));
    report.record("sampler moments", sampler_suite());
    report.record("determinism", determinism());

    std::printf("%d of 9 criteria failed\n", report.failures());
    return report.failures() == 0 ? 0 : 1;
}
