/*
 * Copyright 2026 The hetnet-ee Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// hetnet-ee: experiment runner for joint user association and power control.
//
//   hetnet-ee sweep    --config FILE [--jobs N] [--out DIR]
//   hetnet-ee converge --config FILE [--out DIR]
//   hetnet-ee validate --config FILE
//
// Exit codes: 0 success, 1 config error, 2 a solver hit its cap or produced
// an infeasible point in at least one record.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hetnet/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient user association and power control experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t jobs = 1;

  auto* sweep = app.add_subcommand("sweep", "Run every scheme over the xi sweep and seeds");
  sweep->add_option("--config", config_path, "Experiment config file")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  auto* converge = app.add_subcommand("converge", "Write the q trace of one UAPCEE run");
  converge->add_option("--config", config_path, "Experiment config file")->required();
  converge->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults");
  validate->add_option("--config", config_path, "Experiment config file")->required();

  CLI11_PARSE(app, argc, argv);

  hetnet::ExperimentConfig cfg;
  try {
    cfg = hetnet::validate_config(config_path);
  } catch (const hetnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const std::filesystem::path dir = out_dir.empty() ? cfg.output_dir : out_dir;

  try {
    if (*validate) {
      std::cout << hetnet::config_to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }

    if (*converge) {
      const auto run = hetnet::run_convergence(cfg);
      hetnet::write_convergence_outputs(run, dir);
      const auto& sol = run.solution;
      std::printf("converged=%s outer_iterations=%zu q*=%.6f EE=%.6f Mbps/J\n",
                  sol.converged ? "true" : "false", sol.outer_iterations_T3, sol.q_star,
                  sol.metrics.energy_efficiency);
      return sol.converged ? kExitOk : kExitRuntime;
    }

    const auto result = hetnet::run_sweep(cfg, jobs);
    hetnet::write_sweep_outputs(result, dir);
    std::cout << hetnet::summary_csv(result);
    if (!result.skipped_seeds.empty()) {
      std::cerr << result.skipped_seeds.size() << " seed(s) skipped\n";
    }
    return result.any_failure() ? kExitRuntime : kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
