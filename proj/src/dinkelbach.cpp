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

#include "hetnet/dinkelbach.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace hetnet {

void SolverConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be >= 1");
  ua.validate();
  pc.validate();
}

SolverCounters Solution::counters() const {
  SolverCounters c;
  c.T3 = outer_iterations_T3;
  for (const auto& it : iterations) {
    c.T1 += it.ua.iterations_T1;
    c.m += it.ua.inner_updates_m;
    c.T2 += it.pc.scale_rounds_T2;
    c.L += it.pc.inner_iters_L;
  }
  return c;
}

double parametric_objective(const Association& assoc, const PowerAllocation& power, double q,
                            const NetworkInstance& inst) {
  const auto r = served_rates(assoc, power.watts, inst);
  double value = 0.0;
  for (std::size_t n = 0; n < r.size(); ++n) {
    const std::size_t k = assoc.serving(n);
    value += (1.0 - q * inst.stations[k].xi) / static_cast<double>(assoc.load(k)) * r[n];
  }
  for (std::size_t k = 0; k < inst.num_stations(); ++k) {
    value -= q * inst.stations[k].varrho * power.watts[k];
  }
  return value;
}

namespace {

Solution run_outer_loop(const NetworkInstance& inst, const SolverConfig& cfg,
                        const std::optional<Association>& frozen) {
  inst.validate();
  cfg.validate();

  const bool optimize_assoc = !frozen.has_value();
  Association assoc = frozen ? *frozen : max_score_association(inst.gains);
  PowerAllocation power = PowerAllocation::at_max(inst);
  bool cold = true;

  auto association_step = [&](OuterIteration& rec, double q) {
    if (!optimize_assoc) return;
    UaResult ua = cold ? solve_ua(power, q, inst, cfg.ua)
                       : solve_ua(power, q, inst, cfg.ua, assoc);
    cold = false;
    rec.ua_ran = true;
    rec.ua = ua.diagnostics;
    // Never accept a pass that lowers the association objective at this power.
    const Eigen::MatrixXd rates = rate_matrix(power.watts, inst);
    if (ua_objective(ua.assoc, rates, q, inst) >= ua_objective(assoc, rates, q, inst)) {
      assoc = std::move(ua.assoc);
    } else {
      rec.ua_kept_previous = true;
    }
  };
  auto power_step = [&](OuterIteration& rec, double q) {
    PcResult pc = solve_pc(assoc, q, power, inst, cfg.pc);
    rec.pc = std::move(pc.diagnostics);
    power = std::move(pc.power);
  };

  Solution sol;
  double q = 0.0;
  std::optional<Solution> best;

  for (std::size_t t = 0; t < cfg.max_outer; ++t) {
    OuterIteration rec;
    rec.q = q;
    if (cfg.order == SubproblemOrder::AssociationFirst) {
      association_step(rec, q);
      power_step(rec, q);
    } else {
      power_step(rec, q);
      association_step(rec, q);
    }
    rec.metrics = total_power(assoc, power, inst);
    rec.gap = rec.metrics.sum_effective_rate - q * rec.metrics.total_power;

    sol.q_trace.push_back(q);
    sol.iterations.push_back(rec);
    sol.outer_iterations_T3 = t + 1;

    if (std::abs(rec.gap) <= cfg.epsilon) {
      sol.assoc = assoc;
      sol.power = power;
      sol.metrics = rec.metrics;
      sol.q_star = q;
      sol.converged = true;
      return sol;
    }
    if (!best || rec.metrics.energy_efficiency > best->metrics.energy_efficiency) {
      best = Solution{};
      best->assoc = assoc;
      best->power = power;
      best->metrics = rec.metrics;
    }
    q = rec.metrics.sum_effective_rate / rec.metrics.total_power;
  }

  sol.assoc = best->assoc;
  sol.power = best->power;
  sol.metrics = best->metrics;
  sol.q_star = best->metrics.energy_efficiency;
  sol.converged = false;
  return sol;
}

}  // namespace

Solution solve(const NetworkInstance& inst, const SolverConfig& cfg) {
  return run_outer_loop(inst, cfg, std::nullopt);
}

Solution solve_fixed_association(const NetworkInstance& inst, const Association& assoc,
                                 const SolverConfig& cfg) {
  if (assoc.num_users() != inst.num_users() || assoc.num_stations() != inst.num_stations()) {
    throw std::invalid_argument("solve_fixed_association: association does not match instance");
  }
  return run_outer_loop(inst, cfg, assoc);
}

}  // namespace hetnet
