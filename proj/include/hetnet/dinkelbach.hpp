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

#ifndef HETNET_DINKELBACH_HPP
#define HETNET_DINKELBACH_HPP

#include <cstddef>
#include <vector>

#include "hetnet/channel.hpp"
#include "hetnet/model.hpp"
#include "hetnet/pc_solver.hpp"
#include "hetnet/ua_solver.hpp"

namespace hetnet {

enum class SubproblemOrder { AssociationFirst, PowerFirst };

struct SolverConfig {
  double epsilon = 1e-3;  // Mbps, stop when |R - qP| <= epsilon
  std::size_t max_outer = 50;
  SubproblemOrder order = SubproblemOrder::AssociationFirst;
  UaConfig ua;
  PcConfig pc;

  bool operator==(const SolverConfig&) const = default;
  void validate() const;
};

/// One pass of the outer loop.
struct OuterIteration {
  double q = 0.0;
  double gap = 0.0;  // R - qP after both subproblems
  MetricBreakdown metrics;
  bool ua_ran = false;
  bool ua_kept_previous = false;  // heuristic result was worse than the incumbent
  UaDiagnostics ua;
  PcDiagnostics pc;
};

struct SolverCounters {
  std::size_t T1 = 0;  // association passes
  std::size_t m = 0;   // multiplier sub-steps
  std::size_t T2 = 0;  // SCALE rounds
  std::size_t L = 0;   // inner ascent iterations
  std::size_t T3 = 0;  // outer iterations
};

struct Solution {
  Association assoc;
  PowerAllocation power;
  double q_star = 0.0;
  MetricBreakdown metrics;
  std::vector<double> q_trace;
  std::size_t outer_iterations_T3 = 0;
  bool converged = false;
  std::vector<OuterIteration> iterations;

  SolverCounters counters() const;
};

/// sum_k sum_n (1 - q xi_k) / y_k x_nk r_nk - q sum_k varrho_k p_k.
/// Equals R - q P + q P_c; the static term is dropped because it does not
/// depend on (x, p).
double parametric_objective(const Association& assoc, const PowerAllocation& power, double q,
                            const NetworkInstance& inst);

/// Joint association and power control maximizing R / P.
///
/// Starting from q = 0 and full power, each outer iteration solves the
/// association subproblem and then the power subproblem (warm-started from
/// the previous iterate), stops once |R - qP| <= epsilon and otherwise sets
/// q = R / P. If the cap is reached, the iterate with the best energy
/// efficiency is returned with converged = false.
Solution solve(const NetworkInstance& inst, const SolverConfig& cfg);

/// Same outer loop with the association held fixed; only power is optimized.
Solution solve_fixed_association(const NetworkInstance& inst, const Association& assoc,
                                 const SolverConfig& cfg);

}  // namespace hetnet

#endif  // HETNET_DINKELBACH_HPP
