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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "sscm/io.hpp"

TEST(Overrides, AppliesAndRejects) {
    sscm::ModelParams p;
    sscm::apply_param_override(p, "mu_tau_ns=90.5");
    EXPECT_EQ(p.temporal.mu_tau_ns, 90.5);
    sscm::apply_param_override(p, "n_max=1");
    EXPECT_EQ(p.temporal.n_max, 1);
    sscm::apply_param_override(p, "aoa_elev_mean=2.5");
    EXPECT_EQ(p.spatial.aoa_elevation.mean, 2.5);
    EXPECT_THROW(sscm::apply_param_override(p, "n_max=1.5"), sscm::ConfigError);
    EXPECT_THROW(sscm::apply_param_override(p, "no_such_field=1"), sscm::ConfigError);
    EXPECT_THROW(sscm::apply_param_override(p, "mu_tau_ns=abc"), sscm::ConfigError);
    EXPECT_THROW(sscm::apply_param_override(p, "mu_tau_ns"), sscm::ConfigError);
}

TEST(Overrides, ErrorNamesField) {
    sscm::ModelParams p;
    try {
        sscm::apply_param_override(p, "m_max=0");
        p.validate();
        FAIL() << "expected ConfigError";
    } catch (const sscm::ConfigError& e) {
        EXPECT_EQ(e.field(), "m_max");
    }
}

TEST(ConfigJson, RoundTrip) {
    sscm::RunConfig a;
    a.seed = 77;
    a.ensemble_size = 12;
    a.validation_mode = false;
    a.params.link.d_max = 150.0;
    a.params.spatial.aod_sigma_theta.std = 2.25;
    sscm::RunConfig b;
    sscm::apply_config_json(b, nlohmann::json::parse(sscm::config_to_json(a).dump()));
    EXPECT_EQ(b.seed, 77u);
    EXPECT_EQ(b.ensemble_size, 12u);
    EXPECT_FALSE(b.validation_mode);
    EXPECT_EQ(sscm::params_to_json(a.params), sscm::params_to_json(b.params));
}

TEST(ConfigJson, Rejects) {
    sscm::RunConfig c;
    EXPECT_THROW(sscm::apply_config_json(c, nlohmann::json::parse(R"({"bogus": 1})")), sscm::ConfigError);
    EXPECT_THROW(sscm::apply_config_json(c, nlohmann::json::parse(R"({"seed": "x"})")), sscm::ConfigError);
    EXPECT_THROW(sscm::apply_config_json(c, nlohmann::json::parse(R"({"format_version": 9})")), sscm::ConfigError);
    EXPECT_THROW(sscm::apply_config_json(c, nlohmann::json::parse(R"({"params": {"n_max": true}})")),
                 sscm::ConfigError);
    EXPECT_THROW(sscm::apply_config_json(c, nlohmann::json::parse("[1]")), sscm::ConfigError);
    EXPECT_THROW(sscm::load_config_file(c, "/nonexistent/sscm.json"), sscm::IoError);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(sscm::format_double(0.1), "0.1");
    EXPECT_EQ(sscm::format_double(200.0), "200");
    const double v = 1.0 / 3.0;
    EXPECT_EQ(std::stod(sscm::format_double(v)), v);
    EXPECT_EQ(sscm::format_double(std::nan("")), "nan");
}

TEST(RealizationJson, RoundTripPreservesStatistics) {
    const sscm::ModelParams p;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto ch = sscm::generate_channel(p, 8, i);
        const auto back = sscm::realization_from_json(nlohmann::json::parse(sscm::realization_to_json(ch).dump()),
                                                      p.spatial);
        EXPECT_EQ(back.id, ch.id);
        std::ostringstream x;
        std::ostringstream y;
        sscm::write_taps_rows(x, ch);
        sscm::write_taps_rows(y, back);
        ASSERT_EQ(x.str(), y.str());
        const auto sa = sscm::assemble_spectrum(ch, sscm::Side::Aoa);
        const auto sb = sscm::assemble_spectrum(back, sscm::Side::Aoa);
        ASSERT_EQ(sa.nonzero_count(), sb.nonzero_count());
        for (std::size_t c = 0; c < sa.cells().size(); ++c) ASSERT_EQ(sa.cells()[c], sb.cells()[c]);
        const auto ra = sscm::analyze_channel(ch);
        const auto rb = sscm::analyze_channel(back);
        ASSERT_EQ(ra.rms_delay_spread_ns, rb.rms_delay_spread_ns);
        ASSERT_EQ(ra.detected_aoa_lobes, rb.detected_aoa_lobes);
    }
}

TEST(RealizationJson, ReadById) {
    const sscm::ModelParams p;
    std::stringstream s;
    s << R"({"kind":"header","format_version":1})" << '\n';
    for (std::uint64_t i = 0; i < 4; ++i) s << sscm::realization_to_json(sscm::generate_channel(p, 2, i)).dump() << '\n';
    const std::string text = s.str();
    std::istringstream in(text);
    EXPECT_EQ(sscm::read_realization(in, 2).id, 2u);
    std::istringstream again(text);
    EXPECT_THROW(sscm::read_realization(again, 9), sscm::IoError);
    std::istringstream bad("{not json\n");
    EXPECT_THROW(sscm::read_realization(bad, 0), sscm::IoError);
}

TEST(TapsCsv, HeaderAndColumns) {
    sscm::RunConfig cfg;
    std::ostringstream os;
    sscm::write_taps_header(os, cfg);
    const auto ch = sscm::generate_channel(cfg.params, cfg.seed, 0);
    sscm::write_taps_rows(os, ch);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# sscm taps format_version=1");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# config={", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "realization,n,m,t_ns,power_mw,phase_rad,aod_az,aod_el,aoa_az,aoa_el,l1,l2");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
    }
    EXPECT_EQ(rows, ch.subpath_count());
}

TEST(SpectrumCsv, SparseCellsSumToTotal) {
    const sscm::ModelParams p;
    const auto ch = sscm::generate_channel(p, 4, 0);
    const auto spec = sscm::assemble_spectrum(ch, sscm::Side::Aod);
    std::ostringstream os;
    sscm::write_spectrum_csv(os, spec, 0, sscm::Side::Aod);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_NE(line.find("side=aod"), std::string::npos);
    std::getline(in, line);
    EXPECT_EQ(line, "azimuth_deg,elevation_deg,power_mw");
    double sum = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        sum += std::stod(line.substr(line.rfind(',') + 1));
        ++rows;
    }
    EXPECT_EQ(rows, spec.nonzero_count());
    EXPECT_NEAR(sum, spec.total(), 1e-12 * spec.total());
    const auto j = sscm::spectrum_to_json(spec, 0, sscm::Side::Aod);
    EXPECT_EQ(j["cells"].size(), rows);
}

TEST(Report, BandsAndNulls) {
    sscm::EnsembleStats s;
    s.finalize();
    const auto j = sscm::stats_to_json(s, sscm::RunConfig{});
    EXPECT_TRUE(j["subpath_decay"]["p0"].is_null());
    for (const auto& c : sscm::acceptance_checks(s)) EXPECT_FALSE(c.pass());
}
