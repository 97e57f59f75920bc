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

#include "hetnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <type_traits>

#include <fmt/format.h>

#include "hetnet/serialization.hpp"

namespace hetnet {

using nlohmann::json;

PowerProfile RadioParams::to_profile() const {
  PowerProfile p;
  p.macro = StationProfile{dbm_to_watts(macro_p_max_dbm), macro_varrho, xi, macro_static_w};
  p.small = StationProfile{dbm_to_watts(small_p_max_dbm), small_varrho, xi, small_static_w};
  p.bandwidth = bandwidth_hz;
  p.noise_power = dbm_to_watts(noise_dbm);
  return p;
}

namespace {

// ---------------------------------------------------------------------------
// Config reading

// Reads the keys of one JSON object and remembers which were consumed so the
// rest can be reported as unknown.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(fmt::format("{}: expected an object", where()));
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    const json* v = take(key);
    if (!v) return;
    out = convert<T>(*v, field(key));
  }

  template <typename T>
  void read_list(const std::string& key, std::vector<T>& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array()) throw ConfigError(fmt::format("{}: expected an array", field(key)));
    std::vector<T> items;
    for (std::size_t i = 0; i < v->size(); ++i) {
      items.push_back(convert<T>((*v)[i], fmt::format("{}[{}]", field(key), i)));
    }
    out = std::move(items);
  }

  // Returns nullptr when the subsection is absent.
  const json* sub(const std::string& key) { return take(key); }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.count(key)) throw ConfigError(fmt::format("unknown key '{}'", field(key)));
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json* take(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <typename T>
  static T convert(const json& v, const std::string& name) {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(fmt::format("{}: expected a string", name));
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(fmt::format("{}: expected true or false", name));
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(fmt::format("{}: expected an integer", name));
      if (std::is_unsigned_v<T> && v.is_number_integer() && !v.is_number_unsigned()) {
        throw ConfigError(fmt::format("{}: must be non-negative", name));
      }
      return v.get<T>();
    } else {
      if (!v.is_number()) throw ConfigError(fmt::format("{}: expected a number", name));
      return v.get<T>();
    }
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_topology(Section& s, TopologyParams& t) {
  s.read("area_side", t.area_side);
  s.read("num_small_cells", t.num_small_cells);
  s.read("num_users", t.num_users);
  s.read("min_dist_mbs_ue", t.min_dist_mbs_ue);
  s.read("min_dist_sbs_ue", t.min_dist_sbs_ue);
  s.read("min_dist_ue_ue", t.min_dist_ue_ue);
  s.read("shadowing_std_db", t.shadowing_std_db);
  s.read("rng_seed", t.rng_seed);
  s.reject_unknown();
}

void read_radio(Section& s, RadioParams& r) {
  s.read("macro_p_max_dbm", r.macro_p_max_dbm);
  s.read("small_p_max_dbm", r.small_p_max_dbm);
  s.read("macro_static_w", r.macro_static_w);
  s.read("small_static_w", r.small_static_w);
  s.read("macro_varrho", r.macro_varrho);
  s.read("small_varrho", r.small_varrho);
  s.read("xi", r.xi);
  s.read("bandwidth_hz", r.bandwidth_hz);
  s.read("noise_dbm", r.noise_dbm);
  s.reject_unknown();
}

std::string to_string(SubproblemOrder o) {
  return o == SubproblemOrder::AssociationFirst ? "association_first" : "power_first";
}

void read_solver(Section& s, SolverConfig& c) {
  s.read("epsilon", c.epsilon);
  s.read("max_outer", c.max_outer);
  std::string order = to_string(c.order);
  s.read("order", order);
  if (order == "association_first") {
    c.order = SubproblemOrder::AssociationFirst;
  } else if (order == "power_first") {
    c.order = SubproblemOrder::PowerFirst;
  } else {
    throw ConfigError(fmt::format("{}: expected 'association_first' or 'power_first'",
                                  s.field("order")));
  }
  if (const json* ua = s.sub("ua")) {
    Section u(*ua, s.field("ua"));
    u.read("eta", c.ua.eta);
    u.read("sub_steps", c.ua.sub_steps);
    u.read("max_iterations", c.ua.max_iterations);
    u.read("tolerance", c.ua.tolerance);
    u.reject_unknown();
  }
  if (const json* pc = s.sub("pc")) {
    Section p(*pc, s.field("pc"));
    p.read("p_min_ratio", c.pc.p_min_ratio);
    p.read("max_rounds", c.pc.max_rounds);
    p.read("max_inner", c.pc.max_inner);
    p.read("tol_outer", c.pc.tol_outer);
    p.read("tol_inner", c.pc.tol_inner);
    p.read("armijo", c.pc.armijo);
    p.read("backtrack", c.pc.backtrack);
    p.read("screen_corners", c.pc.screen_corners);
    p.reject_unknown();
  }
  s.reject_unknown();
}

// Rethrows std::invalid_argument from a component validator with a field prefix.
template <typename F>
void prefixed(const std::string& prefix, F&& check) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  prefixed("topology.", [&] { topology.validate(); });
  prefixed("solver.", [&] { solver.validate(); });

  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(radio.macro_p_max_dbm)) throw ConfigError("radio.macro_p_max_dbm must be finite");
  if (!finite(radio.small_p_max_dbm)) throw ConfigError("radio.small_p_max_dbm must be finite");
  if (!finite(radio.noise_dbm)) throw ConfigError("radio.noise_dbm must be finite");
  if (!(radio.bandwidth_hz > 0.0)) throw ConfigError("radio.bandwidth_hz must be > 0");
  if (!(radio.macro_static_w >= 0.0)) throw ConfigError("radio.macro_static_w must be >= 0");
  if (!(radio.small_static_w >= 0.0)) throw ConfigError("radio.small_static_w must be >= 0");
  if (!(radio.macro_varrho >= 1.0)) throw ConfigError("radio.macro_varrho must be >= 1");
  if (!(radio.small_varrho >= 1.0)) throw ConfigError("radio.small_varrho must be >= 1");
  if (!(radio.xi >= 0.0)) throw ConfigError("radio.xi must be >= 0");

  if (std::isnan(re_bias.macro_db)) throw ConfigError("baselines.re_bias_macro_db is NaN");
  if (std::isnan(re_bias.small_db)) throw ConfigError("baselines.re_bias_small_db is NaN");

  if (schemes.empty()) throw ConfigError("schemes must not be empty");
  std::set<SchemeId> unique(schemes.begin(), schemes.end());
  if (unique.size() != schemes.size()) throw ConfigError("schemes must not repeat");
  if (xi_sweep.empty()) throw ConfigError("xi_sweep must not be empty");
  for (double xi : xi_sweep) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw ConfigError("xi_sweep values must be finite and >= 0");
  }
  if (num_seeds < 1) throw ConfigError("num_seeds must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return cfg;

  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    // The message already carries the line and column.
    throw ConfigError(e.what());
  }

  Section root(doc, "");
  if (const json* t = root.sub("topology")) {
    Section s(*t, "topology");
    read_topology(s, cfg.topology);
  }
  if (const json* r = root.sub("radio")) {
    Section s(*r, "radio");
    read_radio(s, cfg.radio);
  }
  if (const json* sv = root.sub("solver")) {
    Section s(*sv, "solver");
    read_solver(s, cfg.solver);
  }
  if (const json* b = root.sub("baselines")) {
    Section s(*b, "baselines");
    s.read("re_bias_macro_db", cfg.re_bias.macro_db);
    s.read("re_bias_small_db", cfg.re_bias.small_db);
    s.reject_unknown();
  }
  std::vector<std::string> names;
  root.read_list("schemes", names);
  if (root.sub("schemes")) {
    cfg.schemes.clear();
    for (const auto& n : names) {
      try {
        cfg.schemes.push_back(scheme_from_string(n));
      } catch (const std::invalid_argument&) {
        throw ConfigError(fmt::format("schemes: unknown scheme '{}'", n));
      }
    }
  }
  root.read_list("xi_sweep", cfg.xi_sweep);
  root.read("num_seeds", cfg.num_seeds);
  root.read("output_dir", cfg.output_dir);
  root.reject_unknown();
  return cfg;
}

ExperimentConfig validate_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_config(buf.str());
  cfg.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  const auto& t = cfg.topology;
  const auto& r = cfg.radio;
  const auto& s = cfg.solver;
  json schemes = json::array();
  for (auto id : cfg.schemes) schemes.push_back(std::string(to_string(id)));
  return json{
      {"topology",
       {{"area_side", t.area_side},
        {"num_small_cells", t.num_small_cells},
        {"num_users", t.num_users},
        {"min_dist_mbs_ue", t.min_dist_mbs_ue},
        {"min_dist_sbs_ue", t.min_dist_sbs_ue},
        {"min_dist_ue_ue", t.min_dist_ue_ue},
        {"shadowing_std_db", t.shadowing_std_db},
        {"rng_seed", t.rng_seed}}},
      {"radio",
       {{"macro_p_max_dbm", r.macro_p_max_dbm},
        {"small_p_max_dbm", r.small_p_max_dbm},
        {"macro_static_w", r.macro_static_w},
        {"small_static_w", r.small_static_w},
        {"macro_varrho", r.macro_varrho},
        {"small_varrho", r.small_varrho},
        {"xi", r.xi},
        {"bandwidth_hz", r.bandwidth_hz},
        {"noise_dbm", r.noise_dbm}}},
      {"solver",
       {{"epsilon", s.epsilon},
        {"max_outer", s.max_outer},
        {"order", to_string(s.order)},
        {"ua",
         {{"eta", s.ua.eta},
          {"sub_steps", s.ua.sub_steps},
          {"max_iterations", s.ua.max_iterations},
          {"tolerance", s.ua.tolerance}}},
        {"pc",
         {{"p_min_ratio", s.pc.p_min_ratio},
          {"max_rounds", s.pc.max_rounds},
          {"max_inner", s.pc.max_inner},
          {"tol_outer", s.pc.tol_outer},
          {"tol_inner", s.pc.tol_inner},
          {"armijo", s.pc.armijo},
          {"backtrack", s.pc.backtrack},
          {"screen_corners", s.pc.screen_corners}}}}},
      {"baselines",
       {{"re_bias_macro_db", cfg.re_bias.macro_db}, {"re_bias_small_db", cfg.re_bias.small_db}}},
      {"schemes", schemes},
      {"xi_sweep", cfg.xi_sweep},
      {"num_seeds", cfg.num_seeds},
      {"output_dir", cfg.output_dir}};
}

// ---------------------------------------------------------------------------
// Sweep

json to_json(const ResultRecord& r) {
  return json{{"scheme", std::string(to_string(r.scheme))},
              {"xi", r.xi},
              {"seed", r.seed},
              {"metrics", r.metrics},
              {"q_star", r.q_star},
              {"q_trace", r.q_trace},
              {"counters", r.counters},
              {"converged", r.converged},
              {"feasible", r.feasible}};
}

bool SweepResult::any_failure() const {
  return std::any_of(records.begin(), records.end(),
                     [](const ResultRecord& r) { return !r.converged || !r.feasible; });
}

std::uint64_t realization_seed(const ExperimentConfig& cfg, std::size_t s) {
  return cfg.topology.rng_seed + s;
}

namespace {

struct SeedOutcome {
  bool skipped = false;
  std::vector<ResultRecord> records;  // xi-major, then scheme
};

SeedOutcome run_one_seed(const ExperimentConfig& cfg, std::size_t s) {
  SeedOutcome out;
  TopologyParams tp = cfg.topology;
  tp.rng_seed = realization_seed(cfg, s);
  NetworkInstance base;
  try {
    base = generate_topology(tp, cfg.radio.to_profile());
  } catch (const PlacementError& e) {
    out.skipped = true;
    return out;
  }
  for (double xi : cfg.xi_sweep) {
    const NetworkInstance inst = base.with_uniform_xi(xi);
    for (SchemeId id : cfg.schemes) {
      const Solution sol = run_scheme(id, inst, cfg.solver, cfg.re_bias);
      ResultRecord rec;
      rec.scheme = id;
      rec.xi = xi;
      rec.seed = tp.rng_seed;
      rec.metrics = sol.metrics;
      rec.q_star = sol.q_star;
      rec.q_trace = sol.q_trace;
      rec.counters = sol.counters();
      rec.converged = sol.converged;
      rec.feasible = check_feasibility(sol.assoc, sol.power, inst).ok();
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg, std::size_t jobs) {
  cfg.validate();
  jobs = std::clamp<std::size_t>(jobs, 1, cfg.num_seeds);

  std::vector<SeedOutcome> outcomes(cfg.num_seeds);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t s = next.fetch_add(1);
      if (s >= cfg.num_seeds) return;
      try {
        outcomes[s] = run_one_seed(cfg, s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  result.schemes = cfg.schemes;
  const std::size_t S = cfg.schemes.size();
  for (std::size_t s = 0; s < cfg.num_seeds; ++s) {
    if (outcomes[s].skipped) {
      result.skipped_seeds.push_back(realization_seed(cfg, s));
      std::cerr << fmt::format("warning: skipped seed {} (topology placement failed)\n",
                               realization_seed(cfg, s));
    }
  }
  for (std::size_t si = 0; si < S; ++si) {
    for (std::size_t xi = 0; xi < cfg.xi_sweep.size(); ++xi) {
      for (std::size_t s = 0; s < cfg.num_seeds; ++s) {
        if (outcomes[s].skipped) continue;
        result.records.push_back(outcomes[s].records[xi * S + si]);
      }
    }
  }
  for (std::size_t xi = 0; xi < cfg.xi_sweep.size(); ++xi) {
    SummaryRow row;
    row.xi = cfg.xi_sweep[xi];
    for (std::size_t si = 0; si < S; ++si) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t s = 0; s < cfg.num_seeds; ++s) {
        if (outcomes[s].skipped) continue;
        sum += outcomes[s].records[xi * S + si].metrics.energy_efficiency;
        ++count;
      }
      row.mean_ee.push_back(count > 0 ? sum / static_cast<double>(count) : std::nan(""));
    }
    result.summary.push_back(std::move(row));
  }
  return result;
}

std::string summary_csv(const SweepResult& result) {
  std::string out = "xi";
  for (auto id : result.schemes) out += fmt::format(",{}", to_string(id));
  out += '\n';
  for (const auto& row : result.summary) {
    out += fmt::format("{}", row.xi);
    for (double ee : row.mean_ee) out += fmt::format(",{:.4f}", ee);
    out += '\n';
  }
  return out;
}

std::string results_jsonl(const SweepResult& result) {
  std::string out;
  for (const auto& r : result.records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  f << content;
  if (!f) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

void write_sweep_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "results.jsonl", results_jsonl(result));
  write_file(dir / "summary.csv", summary_csv(result));
}

ConvergenceRun run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  TopologyParams tp = cfg.topology;
  tp.rng_seed = realization_seed(cfg, 0);
  ConvergenceRun run;
  run.instance = generate_topology(tp, cfg.radio.to_profile());
  run.solution = solve(run.instance, cfg.solver);
  return run;
}

std::string trace_csv(const Solution& sol) {
  std::string out = "iteration,q\n";
  for (std::size_t t = 0; t < sol.q_trace.size(); ++t) {
    out += fmt::format("{},{:.10g}\n", t, sol.q_trace[t]);
  }
  return out;
}

void write_convergence_outputs(const ConvergenceRun& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "trace.csv", trace_csv(run.solution));
  write_file(dir / "scenario.json", json(run.instance).dump(1) + "\n");
}

}  // namespace hetnet
