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

#ifndef HETNET_EXPERIMENT_HPP
#define HETNET_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hetnet/baselines.hpp"
#include "hetnet/channel.hpp"
#include "hetnet/dinkelbach.hpp"

namespace hetnet {

/// Radio and power parameters in the units used by config files.
struct RadioParams {
  double macro_p_max_dbm = 46.0;
  double small_p_max_dbm = 30.0;
  double macro_static_w = 10.0;
  double small_static_w = 0.1;
  double macro_varrho = 4.0;
  double small_varrho = 2.0;
  double xi = 1.0;  // W/Mbps, used when no sweep overrides it
  double bandwidth_hz = 10e6;
  double noise_dbm = -104.0;

  bool operator==(const RadioParams&) const = default;
  PowerProfile to_profile() const;
};

struct ExperimentConfig {
  TopologyParams topology;
  RadioParams radio;
  SolverConfig solver;
  RangeExpansionBias re_bias;
  std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  std::vector<double> xi_sweep{8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0};
  std::size_t num_seeds = 50;
  std::string output_dir = "results";

  bool operator==(const ExperimentConfig&) const = default;

  /// Semantic checks; throws ConfigError naming the offending field.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON config (comments allowed). Omitted fields keep their
/// defaults, unknown keys are rejected, and whitespace-only text yields the
/// default experiment.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses `path`, then validates it.
ExperimentConfig validate_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct ResultRecord {
  SchemeId scheme = SchemeId::UAPCEE;
  double xi = 0.0;
  std::uint64_t seed = 0;
  MetricBreakdown metrics;
  double q_star = 0.0;
  std::vector<double> q_trace;
  SolverCounters counters;
  bool converged = false;
  bool feasible = false;
};

nlohmann::json to_json(const ResultRecord& r);

struct SummaryRow {
  double xi = 0.0;
  std::vector<double> mean_ee;  // one per scheme, config order
};

struct SweepResult {
  std::vector<SchemeId> schemes;
  std::vector<ResultRecord> records;  // ordered by (scheme, xi, seed)
  std::vector<SummaryRow> summary;
  std::vector<std::uint64_t> skipped_seeds;

  bool any_failure() const;
};

/// Seed of the s-th topology realization.
std::uint64_t realization_seed(const ExperimentConfig& cfg, std::size_t s);

/// Runs every scheme at every sweep point on every realization. Realizations
/// are independent work items spread over `jobs` threads; the result does not
/// depend on `jobs`.
SweepResult run_sweep(const ExperimentConfig& cfg, std::size_t jobs = 1);

std::string summary_csv(const SweepResult& result);
std::string results_jsonl(const SweepResult& result);

/// Writes results.jsonl and summary.csv into `dir`.
void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir);

struct ConvergenceRun {
  NetworkInstance instance;
  Solution solution;
};

/// UAPCEE on the first realization with the configured radio xi.
ConvergenceRun run_convergence(const ExperimentConfig& cfg);

std::string trace_csv(const Solution& sol);

/// Writes trace.csv and scenario.json into `dir`.
void write_convergence_outputs(const ConvergenceRun& run, const std::filesystem::path& dir);

}  // namespace hetnet

#endif  // HETNET_EXPERIMENT_HPP
