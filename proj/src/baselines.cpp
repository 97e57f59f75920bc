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

#include "hetnet/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hetnet {

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::UAPCEE: return "UAPCEE";
    case SchemeId::JUAPCMSE: return "JUAPCMSE";
    case SchemeId::UAPCEEwB: return "UAPCEEwB";
    case SchemeId::RE: return "RE";
    case SchemeId::MaxGain: return "MaxGain";
  }
  throw std::invalid_argument("unknown scheme id");
}

SchemeId scheme_from_string(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

namespace {

// Received power in dB; an infinite bias moves the station into a tier that
// dominates every finite one while keeping the order inside the tier.
double biased_score_db(double gain, double p_max, double bias_db) {
  constexpr double kInfiniteTierDb = 1e4;
  const double rx_db = 10.0 * std::log10(gain * p_max);
  if (std::isinf(bias_db)) return rx_db + (bias_db > 0 ? kInfiniteTierDb : -kInfiniteTierDb);
  return rx_db + bias_db;
}

}  // namespace

Association range_expansion_association(const NetworkInstance& inst,
                                        const RangeExpansionBias& bias) {
  Eigen::MatrixXd score(inst.gains.rows(), inst.gains.cols());
  for (Eigen::Index k = 0; k < score.cols(); ++k) {
    const auto& bs = inst.stations[static_cast<std::size_t>(k)];
    const double b = bs.kind == BsKind::Macro ? bias.macro_db : bias.small_db;
    for (Eigen::Index n = 0; n < score.rows(); ++n) {
      score(n, k) = biased_score_db(inst.gains(n, k), bs.p_max, b);
    }
  }
  return max_score_association(score);
}

Association max_gain_association(const NetworkInstance& inst) {
  return max_score_association(inst.gains);
}

Solution solve_range_expansion(const NetworkInstance& inst, const SolverConfig& cfg,
                               const RangeExpansionBias& bias) {
  return solve_fixed_association(inst, range_expansion_association(inst, bias), cfg);
}

Solution solve_max_gain(const NetworkInstance& inst, const SolverConfig& cfg) {
  return solve_fixed_association(inst, max_gain_association(inst), cfg);
}

Solution solve_no_backhaul_objective(const NetworkInstance& inst, const SolverConfig& cfg) {
  Solution sol = solve(inst.with_uniform_xi(0.0), cfg);
  sol.metrics = total_power(sol.assoc, sol.power, inst);
  return sol;
}

Solution solve_sum_rate(const NetworkInstance& inst, const SolverConfig& cfg) {
  inst.validate();
  cfg.validate();

  Association assoc = max_gain_association(inst);
  PowerAllocation power = PowerAllocation::at_max(inst);
  Solution sol;

  for (std::size_t t = 0; t < cfg.max_outer; ++t) {
    OuterIteration rec;
    const Association previous = assoc;

    UaResult ua = t == 0 ? solve_ua(power, 0.0, inst, cfg.ua)
                         : solve_ua(power, 0.0, inst, cfg.ua, assoc);
    rec.ua_ran = true;
    rec.ua = ua.diagnostics;
    const Eigen::MatrixXd rates = rate_matrix(power.watts, inst);
    if (ua_objective(ua.assoc, rates, 0.0, inst) >= ua_objective(assoc, rates, 0.0, inst)) {
      assoc = std::move(ua.assoc);
    } else {
      rec.ua_kept_previous = true;
    }

    PcResult pc = solve_pc(assoc, 0.0, power, inst, cfg.pc);
    rec.pc = std::move(pc.diagnostics);
    power = std::move(pc.power);

    rec.metrics = total_power(assoc, power, inst);
    rec.gap = rec.metrics.sum_effective_rate;
    sol.q_trace.push_back(0.0);
    sol.iterations.push_back(rec);
    sol.outer_iterations_T3 = t + 1;
    if (t > 0 && assoc == previous) {
      sol.converged = true;
      break;
    }
  }
  sol.assoc = std::move(assoc);
  sol.power = std::move(power);
  sol.metrics = total_power(sol.assoc, sol.power, inst);
  sol.q_star = 0.0;
  return sol;
}

Solution run_scheme(SchemeId id, const NetworkInstance& inst, const SolverConfig& cfg,
                    const RangeExpansionBias& bias) {
  switch (id) {
    case SchemeId::UAPCEE: return solve(inst, cfg);
    case SchemeId::JUAPCMSE: return solve_sum_rate(inst, cfg);
    case SchemeId::UAPCEEwB: return solve_no_backhaul_objective(inst, cfg);
    case SchemeId::RE: return solve_range_expansion(inst, cfg, bias);
    case SchemeId::MaxGain: return solve_max_gain(inst, cfg);
  }
  throw std::invalid_argument("unknown scheme id");
}

}  // namespace hetnet
