// Copyright 2026 The vbmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: runs a scenario from a JSON config and writes
// results.csv, densities.jsonl and any pixmaps / count tables into --out.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vbmem/vbmem.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int offline_tomography(const vbmem::ExperimentConfig &cfg, const std::string &counts_path, const std::string &target_name) {
    const auto records = vbmem::read_counts_csv(counts_path);
    const vbmem::HybridState target = vbmem::logical_state(target_name);
    const auto raw = vbmem::tomograph(records, {false});
    const auto corrected = vbmem::tomograph(records, {true});
    const double f_raw = raw.fidelity_vs(target);
    const double eta = vbmem::efficiency_at(cfg.memory, cfg.storage_times.empty() ? 0.0 : cfg.storage_times.front());
    vbmem::json out{
        {"target", target_name},
        {"rho_raw", vbmem::detail::matrix_json(raw.rho)},
        {"rho_corrected", vbmem::detail::matrix_json(corrected.rho)},
        {"fidelity_raw", f_raw},
        {"fidelity_corrected", corrected.fidelity_vs(target)},
        {"bound_poisson", vbmem::classical_bound_poisson(cfg.source.nbar)},
        {"bound_efficiency", vbmem::classical_bound_with_efficiency({cfg.source.nbar, std::clamp(eta, 1e-300, 1.0)})},
        {"pass_shor_preskill", vbmem::shor_preskill_pass(f_raw)},
    };
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Storage and retrieval of vector beams in a dual-rail quantum memory"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    std::string scenario;
    bool dump_config = false;
    std::string counts_path;
    std::string target = "radial";
    app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Override the configured seed");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--scenario", scenario,
                   "Override the scenario (store_tomography, fidelity_vs_time, fidelity_vs_rotation, field_maps, "
                   "bounds_table)");
    app.add_flag("--dump-config", dump_config, "Print the effective configuration as JSON and exit");
    app.add_option("--counts", counts_path, "Reconstruct a state from a count-record CSV instead of simulating")
        ->check(CLI::ExistingFile);
    app.add_option("--target", target, "Target state name for --counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        vbmem::ExperimentConfig cfg = config_path.empty() ? vbmem::ExperimentConfig{} : vbmem::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (!scenario.empty()) {
            const auto s = vbmem::scenario_from_string(scenario);
            if (!s) throw vbmem::Error(vbmem::ErrorKind::ConfigError, "--scenario: unknown scenario '" + scenario + "'");
            cfg.scenario = *s;
        }
        vbmem::validate(cfg);

        if (dump_config) {
            std::cout << vbmem::to_json(cfg).dump(2) << '\n';
            return 0;
        }
        if (!counts_path.empty()) return offline_tomography(cfg, counts_path, target);

        const vbmem::Report report = vbmem::run(cfg);
        for (const auto &path : vbmem::emit(report, out_dir)) std::cout << path.string() << '\n';
        return 0;
    } catch (const vbmem::Error &e) {
        std::cerr << e.what() << '\n';
        switch (e.kind()) {
            case vbmem::ErrorKind::ConfigError:
            case vbmem::ErrorKind::DomainError: return kExitConfig;
            case vbmem::ErrorKind::IoError: return kExitIo;
            default: return 1;
        }
    } catch (const std::exception &e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}
