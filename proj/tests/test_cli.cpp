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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("sscm_cli_") + info->name() + "_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    // exit status of `sscm <args>`, stdout captured into `out`
    int run(const std::string& args, std::string* out = nullptr) const {
        const fs::path log = dir_ / "stdout.txt";
        const std::string cmd = std::string(SSCM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        if (out) *out = slurp(log);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateIsByteIdentical) {
    const fs::path a = dir_ / "a";
    const fs::path b = dir_ / "b";
    ASSERT_EQ(run("generate --seed 5 --ensemble-size 20 --out " + a.string()), 0);
    ASSERT_EQ(run("generate --seed 5 --ensemble-size 20 --threads 1 --out " + b.string()), 0);
    const std::string x = slurp(a / "taps.csv");
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, slurp(b / "taps.csv"));
    ASSERT_EQ(run("generate --seed 6 --ensemble-size 20 --out " + b.string()), 0);
    EXPECT_NE(x, slurp(b / "taps.csv"));
}

TEST_F(Cli, StructuredSingleCluster) {
    ASSERT_EQ(run("generate --seed 3 --ensemble-size 5 --format structured --param n_max=1 --out " + dir_.string()), 0);
    std::ifstream in(dir_ / "realizations.jsonl");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(nlohmann::json::parse(line).at("kind"), "header");
    int records = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j.at("clusters").size(), 1u);
        ++records;
    }
    EXPECT_EQ(records, 5);
}

TEST_F(Cli, ValidateSingleRealization) {
    std::string out;
    ASSERT_EQ(run("validate --seed 1 --ensemble-size 1 --out " + dir_.string(), &out), 0) << out;
    const auto j = nlohmann::json::parse(slurp(dir_ / "stats.json"));
    EXPECT_EQ(j.at("realizations"), 1);
    EXPECT_NE(out.find("median_rms_delay_spread_ns"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
    std::string out;
    EXPECT_EQ(run("generate --param no_such=1 --out " + dir_.string(), &out), 1);
    EXPECT_NE(out.find("no_such"), std::string::npos);
    EXPECT_EQ(run("generate --ensemble-size 0 --out " + dir_.string()), 1);
    EXPECT_EQ(run("generate --bogus-flag"), 1);
    // mean cluster spacing far outside the model: delay spread band fails
    EXPECT_EQ(run("validate --strict --ensemble-size 50 --param mu_tau_ns=2000 --out " + dir_.string()), 2);
    std::ofstream(dir_ / "plain_file") << "x";
    EXPECT_EQ(run("generate --ensemble-size 2 --out " + (dir_ / "plain_file" / "sub").string()), 3);
    EXPECT_EQ(run("export-spectrum --id 0 --input " + (dir_ / "missing.jsonl").string() + " --out " + dir_.string()),
              3);
    EXPECT_EQ(run("export-spectrum --id 10 --ensemble-size 10 --out " + dir_.string()), 1);
}

TEST_F(Cli, ExportSpectrumMatchesStoredRealization) {
    ASSERT_EQ(run("generate --seed 9 --ensemble-size 4 --format structured --out " + dir_.string()), 0);
    const fs::path regen = dir_ / "regen";
    ASSERT_EQ(run("export-spectrum --seed 9 --ensemble-size 4 --id 2 --side aoa --out " + regen.string()), 0);
    const fs::path stored = dir_ / "stored";
    ASSERT_EQ(run("export-spectrum --id 2 --side aoa --input " + (dir_ / "realizations.jsonl").string() + " --out " +
                  stored.string()),
              0);
    const std::string a = slurp(regen / "spectrum_2_aoa.csv");
    EXPECT_NE(a.find("azimuth_deg,elevation_deg,power_mw"), std::string::npos);
    EXPECT_EQ(a, slurp(stored / "spectrum_2_aoa.csv"));
}

TEST_F(Cli, ShowConfigPrecedence) {
    const fs::path cfg = dir_ / "cfg.json";
    std::ofstream(cfg) << R"({"seed": 41, "params": {"mu_tau_ns": 70}})";
    std::string out;
    ASSERT_EQ(run("show-config --config " + cfg.string() + " --param mu_tau_ns=75", &out), 0);
    const auto j = nlohmann::json::parse(out);
    EXPECT_EQ(j.at("seed"), 41);
    EXPECT_EQ(j.at("params").at("mu_tau_ns"), 75.0);
    EXPECT_EQ(j.at("format_version"), 1);
}
