// Copyright 2026 The squidsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "squidsim/config.hpp"
#include "squidsim/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

squidsim::ScenarioConfig load_config(const std::string& scenario, const std::string& config_path,
                                     double dt_override) {
    using squidsim::Json;
    squidsim::ScenarioConfig cfg = [&]() {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                throw squidsim::ValidationError("config file '" + config_path + "' not readable");
            }
            Json j;
            try {
                j = Json::parse(in);
            } catch (const std::exception& e) {
                throw squidsim::ValidationError(std::string("config parse error: ") + e.what());
            }
            return squidsim::parse_config(j);
        }
        return squidsim::builtin_scenario(scenario);
    }();
    if (dt_override > 0.0) {
        cfg.dt = dt_override;
        cfg.resolved["integrator"]["dt"] = dt_override;
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"squidsim: deterministic three-level SQUID qubit simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::string config_path;
    std::string out_dir;
    double dt_override = -1.0;

    CLI::App* run = app.add_subcommand("run", "run a named scenario or a JSON config");
    run->add_option("--scenario", scenario, "built-in scenario name (see `list`)");
    run->add_option("--config", config_path, "path to a JSON scenario config");
    CLI::Option* out_opt =
        run->add_option("--out", out_dir, "output directory (default: config output.directory)");
    run->add_option("--dt", dt_override, "integrator step override, ns");

    CLI::App* list = app.add_subcommand("list", "list built-in scenarios");

    std::string dev_config_path;
    std::string dev_out_dir;
    CLI::App* device = app.add_subcommand("device-spectrum",
                                          "solve the rf-SQUID flux spectrum (device scenario)");
    device->add_option("--config", dev_config_path, "path to a JSON device config");
    CLI::Option* dev_out_opt = device->add_option("--out", dev_out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    const auto apply_out_override = [](squidsim::ScenarioConfig& cfg, const CLI::Option* opt,
                                       const std::string& dir) {
        if (opt->count() > 0) {
            cfg.output_directory = dir;
            cfg.resolved["output"]["directory"] = dir;
        }
    };

    try {
        if (list->parsed()) {
            for (const auto& info : squidsim::list_scenarios()) {
                std::cout << info.name << "  -  " << info.description << "\n";
            }
            return kExitOk;
        }
        if (device->parsed()) {
            squidsim::ScenarioConfig cfg =
                dev_config_path.empty() ? squidsim::builtin_scenario("device")
                                        : load_config("", dev_config_path, -1.0);
            if (cfg.type != squidsim::ScenarioType::device_spectrum) {
                throw squidsim::ValidationError(
                    "scenario_type: device-spectrum requires a device_spectrum config");
            }
            apply_out_override(cfg, dev_out_opt, dev_out_dir);
            squidsim::run_scenario(cfg);
            return kExitOk;
        }
        // run
        if (scenario.empty() == config_path.empty()) {
            throw squidsim::ValidationError("run: give exactly one of --scenario or --config");
        }
        squidsim::ScenarioConfig cfg = load_config(scenario, config_path, dt_override);
        apply_out_override(cfg, out_opt, out_dir);
        squidsim::run_scenario(cfg);
        return kExitOk;
    } catch (const squidsim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
