// SPDX-License-Identifier: Apache-2.0
//
// ambcn: finite-blocklength BLER toolkit for AmBC-NOMA V2X links
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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ambcn/sweep.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config_error = 2;
constexpr int exit_validation_fail = 3;

ambcn::SystemConfig load_or_default(const std::string& path, bool strict) {
    ambcn::SystemConfig cfg = path.empty() ? ambcn::SystemConfig{} : ambcn::load_config(path);
    cfg.strict = strict;
    return cfg;
}

std::vector<ambcn::Method> parse_engines(const std::vector<std::string>& names) {
    std::vector<ambcn::Method> engines;
    for (const std::string& n : names) {
        if (n == "riemann") engines.push_back(ambcn::Method::riemann);
        else if (n == "gauss-chebyshev") engines.push_back(ambcn::Method::gauss_chebyshev);
        else if (n == "monte-carlo") engines.push_back(ambcn::Method::monte_carlo);
        else throw ambcn::ConfigError("unknown engine '" + n +
                                      "' (expected riemann, gauss-chebyshev, monte-carlo)");
    }
    return engines;
}

ambcn::Axis parse_axis(const std::string& name) {
    if (name == "gamma_db") return ambcn::Axis::gamma_db;
    if (name == "beta") return ambcn::Axis::beta;
    if (name == "blocklength") return ambcn::Axis::blocklength;
    if (name == "speed") return ambcn::Axis::speed;
    throw ambcn::ConfigError("unknown axis '" + name +
                             "' (expected gamma_db, beta, blocklength, speed)");
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ambcn::ConfigError("cannot write output file '" + out_path + "'");
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ambcn: average-BLER engines for a two-user AmBC-NOMA short-packet link"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may appear after the verb

    std::string config_path;
    std::string out_path;
    std::string axis_name = "gamma_db";
    std::vector<std::string> engine_names{"riemann"};
    std::vector<double> values;
    long trials = 1'000'000;
    std::uint64_t seed = 0x5eed;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    int gc_n = 30;
    bool strict = false;

    app.add_option("--config", config_path, "scenario file (flat key = value lines)");
    app.add_option("--out", out_path, "write CSV here instead of stdout");
    app.add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--workers", workers, "Monte Carlo worker threads")->capture_default_str();
    app.add_option("--gc-n", gc_n, "Gauss-Chebyshev node count")->capture_default_str();
    app.add_flag("--strict", strict, "diagnose closed-form excursions outside [0,1]");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep one axis, emit a CSV table");
    sweep_cmd->add_option("--axis", axis_name, "gamma_db | beta | blocklength | speed")
        ->capture_default_str();
    sweep_cmd->add_option("--values", values, "ascending axis values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--engines", engine_names,
                          "riemann | gauss-chebyshev | monte-carlo")
        ->delimiter(',');

    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "cross-check all engines per gamma, report PASS/FAIL");
    validate_cmd->add_option("--values", values, "gamma grid in dB")->delimiter(',');

    CLI::App* point_cmd =
        app.add_subcommand("point", "evaluate the configured scenario at one point");
    point_cmd->add_option("--engines", engine_names,
                          "riemann | gauss-chebyshev | monte-carlo")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        const ambcn::SystemConfig cfg = load_or_default(config_path, strict);
        ambcn::McPlan plan;
        plan.trials = trials;
        plan.seed = seed;
        plan.workers = workers;

        if (sweep_cmd->parsed()) {
            ambcn::SweepSpec spec;
            spec.axis = parse_axis(axis_name);
            spec.values = values;
            spec.engines = parse_engines(engine_names);
            spec.gc_n = gc_n;
            const auto rows = ambcn::run_sweep(cfg, spec, plan);
            emit(ambcn::sweep_csv(rows, spec.axis), out_path);
            return exit_ok;
        }
        if (point_cmd->parsed()) {
            ambcn::SweepSpec spec;
            spec.axis = ambcn::Axis::gamma_db;
            spec.values = {cfg.gamma_db};
            spec.engines = parse_engines(engine_names);
            spec.gc_n = gc_n;
            const auto rows = ambcn::run_sweep(cfg, spec, plan);
            emit(ambcn::sweep_csv(rows, spec.axis), out_path);
            return exit_ok;
        }
        // validate
        std::vector<double> grid = values;
        if (grid.empty()) grid = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
        const ambcn::ValidateReport rep = ambcn::run_validation(cfg, grid, plan, gc_n);
        std::cout << rep.text;
        if (!out_path.empty()) emit(rep.csv, out_path);
        return rep.pass ? exit_ok : exit_validation_fail;
    } catch (const ambcn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
