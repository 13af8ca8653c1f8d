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

// Command-line driver: generate, validate, export-spectrum, show-config.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sscm/sscm.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kAcceptanceViolation = 2, kIoError = 3 };

struct CommonOptions {
    std::uint64_t seed = 1;
    std::uint64_t ensemble_size = 10000;
    std::string config_path;
    std::string out_dir;
    std::string format = "tabular";
    std::vector<std::string> params;
    unsigned threads = 0;
    bool validation_mode = true;

    CLI::Option* seed_opt = nullptr;
    CLI::Option* size_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* validation_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    o.seed_opt = cmd->add_option("--seed", o.seed, "Root RNG seed");
    o.size_opt = cmd->add_option("--ensemble-size", o.ensemble_size, "Number of channel realizations");
    cmd->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
    o.out_opt = cmd->add_option("--out", o.out_dir, "Output directory (default: $SSCM_OUT_DIR or .)");
    cmd->add_option("--param", o.params, "Model parameter override name=value (repeatable)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"tabular", "structured"}));
    cmd->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    o.validation_opt =
        cmd->add_option("--validation-mode", o.validation_mode, "Exclude subpaths below the noise floor from statistics");
}

// defaults < config file < environment (out dir only) < flags
sscm::RunConfig resolve(const CommonOptions& o) {
    sscm::RunConfig cfg;
    if (const char* env = std::getenv("SSCM_OUT_DIR"); env != nullptr && *env != '\0') {
        cfg.out_dir = env;
    }
    if (!o.config_path.empty()) {
        sscm::load_config_file(cfg, o.config_path);
    }
    if (o.seed_opt->count() > 0) cfg.seed = o.seed;
    if (o.size_opt->count() > 0) cfg.ensemble_size = o.ensemble_size;
    if (o.out_opt->count() > 0) cfg.out_dir = o.out_dir;
    if (o.validation_opt->count() > 0) cfg.validation_mode = o.validation_mode;
    for (const auto& p : o.params) sscm::apply_param_override(cfg.params, p);
    cfg.format = o.format == "structured" ? sscm::OutputFormat::Structured : sscm::OutputFormat::Tabular;
    cfg.threads = o.threads == 0 ? sscm::default_thread_count() : o.threads;
    cfg.validate();
    return cfg;
}

std::ofstream open_output(const sscm::RunConfig& cfg, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw sscm::IoError("cannot write " + path.string());
    return os;
}

void finish(std::ofstream& os, const std::string& what) {
    os.flush();
    if (!os) throw sscm::IoError("write failed: " + what);
}

int run_generate(const sscm::RunConfig& cfg) {
    if (cfg.format == sscm::OutputFormat::Tabular) {
        auto os = open_output(cfg, "taps.csv");
        sscm::write_taps_header(os, cfg);
        sscm::for_each_realization(cfg.params, cfg.seed, cfg.ensemble_size, cfg.threads,
                                   [&](const sscm::ChannelRealization& ch) { sscm::write_taps_rows(os, ch); });
        finish(os, "taps.csv");
        std::cout << "wrote " << cfg.ensemble_size << " realizations to "
                  << (std::filesystem::path(cfg.out_dir) / "taps.csv").string() << '\n';
    } else {
        auto os = open_output(cfg, "realizations.jsonl");
        nlohmann::ordered_json header;
        header["format_version"] = sscm::kFormatVersion;
        header["kind"] = "header";
        header["config"] = sscm::config_to_json(cfg);
        os << header.dump() << '\n';
        sscm::for_each_realization(cfg.params, cfg.seed, cfg.ensemble_size, cfg.threads,
                                   [&](const sscm::ChannelRealization& ch) {
                                       os << sscm::realization_to_json(ch).dump() << '\n';
                                   });
        finish(os, "realizations.jsonl");
        std::cout << "wrote " << cfg.ensemble_size << " realizations to "
                  << (std::filesystem::path(cfg.out_dir) / "realizations.jsonl").string() << '\n';
    }
    return kOk;
}

int run_validate(const sscm::RunConfig& cfg, bool strict) {
    const auto stats = sscm::run_ensemble(cfg.params, cfg.seed, cfg.ensemble_size, cfg.analysis_options(), cfg.threads);
    auto os = open_output(cfg, "stats.json");
    os << sscm::stats_to_json(stats, cfg).dump(2) << '\n';
    finish(os, "stats.json");

    bool all_pass = true;
    std::cout << "realizations: " << stats.realizations << " (without taps above floor: " << stats.empty_realizations
              << ")\n";
    for (const auto& c : sscm::acceptance_checks(stats)) {
        std::cout << (c.pass() ? "PASS " : "FAIL ") << c.name << " = " << c.value << "  [" << c.lo << ", " << c.hi
                  << "]\n";
        all_pass = all_pass && c.pass();
    }
    return strict && !all_pass ? kAcceptanceViolation : kOk;
}

int run_export(const sscm::RunConfig& cfg, std::uint64_t id, const std::string& side_name, const std::string& input) {
    const sscm::Side side = side_name == "aod" ? sscm::Side::Aod : sscm::Side::Aoa;
    sscm::ChannelRealization ch;
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw sscm::IoError("cannot open " + input);
        ch = sscm::read_realization(in, id, cfg.params.spatial);
    } else {
        if (id >= cfg.ensemble_size) {
            throw sscm::ConfigError("id", "unknown realization (ensemble has " + std::to_string(cfg.ensemble_size) +
                                              " members)");
        }
        ch = sscm::generate_channel(cfg.params, cfg.seed, id);
    }
    const auto spec = sscm::assemble_spectrum(ch, side);
    const std::string stem = "spectrum_" + std::to_string(id) + "_" + side_name;
    if (cfg.format == sscm::OutputFormat::Tabular) {
        auto os = open_output(cfg, stem + ".csv");
        sscm::write_spectrum_csv(os, spec, id, side);
        finish(os, stem);
    } else {
        auto os = open_output(cfg, stem + ".json");
        os << sscm::spectrum_to_json(spec, id, side).dump() << '\n';
        finish(os, stem);
    }
    std::cout << "wrote " << spec.nonzero_count() << " nonzero cells, total " << spec.total() << " mW\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sscm: 3-D statistical spatial channel simulator (28 GHz NLOS)"};
    app.require_subcommand(1);

    CommonOptions gen_opts;
    auto* gen = app.add_subcommand("generate", "Generate channel realizations");
    add_common(gen, gen_opts);

    CommonOptions val_opts;
    bool strict = false;
    auto* val = app.add_subcommand("validate", "Generate an ensemble and report secondary statistics");
    add_common(val, val_opts);
    val->add_flag("--strict", strict, "Exit with code 2 when an acceptance band is violated");

    CommonOptions exp_opts;
    std::uint64_t id = 0;
    std::string side = "aoa";
    std::string input;
    auto* exp = app.add_subcommand("export-spectrum", "Write the angular power spectrum of one realization");
    add_common(exp, exp_opts);
    exp->add_option("--id", id, "Realization index")->required();
    exp->add_option("--side", side, "aod or aoa")->check(CLI::IsMember({"aod", "aoa"}));
    exp->add_option("--input", input, "Read the realization from a realizations.jsonl file instead of regenerating");

    CommonOptions show_opts;
    auto* show = app.add_subcommand("show-config", "Print the effective configuration as JSON");
    add_common(show, show_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*gen) return run_generate(resolve(gen_opts));
        if (*val) return run_validate(resolve(val_opts), strict);
        if (*exp) return run_export(resolve(exp_opts), id, side, input);
        if (*show) {
            std::cout << sscm::config_to_json(resolve(show_opts)).dump(2) << '\n';
            return kOk;
        }
    } catch (const sscm::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const sscm::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
