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

#ifndef HETNET_PC_SOLVER_HPP
#define HETNET_PC_SOLVER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hetnet/channel.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

struct PcConfig {
  double p_min_ratio = 1e-6;     // power floor as a fraction of p_max
  std::size_t max_rounds = 50;   // cap on SCALE rounds (T2)
  std::size_t max_inner = 500;   // cap on ascent iterations per round (L)
  double tol_outer = 1e-6;       // relative objective improvement
  double tol_inner = 1e-8;       // projected-gradient norm
  double armijo = 1e-4;
  double backtrack = 0.5;
  // After SCALE settles, compare against the K "one station on, rest at the
  // floor" corners and restart from a corner that already does better.
  bool screen_corners = true;

  bool operator==(const PcConfig&) const = default;
  void validate() const;
};

/// Lower-bound coefficients alpha log z + beta <= log(1 + z), tight at the
/// anchor. Only the serving link of each user enters the objective, but the
/// matrices are kept N x K so any link can be inspected.
struct ScaleCoeffs {
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd beta;
};

/// rho_k = ln(p_k)
struct LogPower {
  std::vector<double> rho;

  static LogPower from_power(std::span<const double> watts);
  std::vector<double> to_power() const;
};

struct PcDiagnostics {
  std::size_t scale_rounds_T2 = 0;
  std::size_t inner_iters_L = 0;
  bool converged = false;
  bool inner_capped = false;  // some inner solve stopped on its iteration cap
  std::vector<double> objective_trace;  // true objective, one entry per round plus the start
};

struct PcResult {
  PowerAllocation power;
  PcDiagnostics diagnostics;
};

struct InnerResult {
  LogPower rho;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// alpha = z / (1 + z), beta = ln(1 + z) - alpha ln z.
std::pair<double, double> scale_coeffs(double z_anchor);

/// Coefficients anchored at the SINRs produced by `power`.
ScaleCoeffs anchor_coeffs(std::span<const double> power, const NetworkInstance& inst);

std::vector<double> power_floor(const NetworkInstance& inst, const PcConfig& cfg);

/// Power-control objective for a fixed association:
/// sum_n (1 - q xi_k) / y_k r_nk - q sum_k varrho_k p_k, with k = k(n).
double pc_objective(const Association& assoc, std::span<const double> power, double q,
                    const NetworkInstance& inst);

/// Concave lower bound of `pc_objective` in log-power, with the link rates
/// replaced by alpha ln(sinr) + beta (same Mbps scaling as link_rate).
double surrogate_objective(const LogPower& rho, const ScaleCoeffs& coeffs,
                           const Association& assoc, double q, const NetworkInstance& inst);

std::vector<double> surrogate_gradient(const LogPower& rho, const ScaleCoeffs& coeffs,
                                       const Association& assoc, double q,
                                       const NetworkInstance& inst);

/// Projected gradient ascent on the box [ln p_min, ln p_max]^K with Armijo
/// backtracking and Barzilai-Borwein trial steps. Never returns a point worse
/// than `start`.
InnerResult solve_inner(const ScaleCoeffs& coeffs, const Association& assoc, double q,
                        const NetworkInstance& inst, const PcConfig& cfg,
                        const LogPower& start);

/// SCALE loop: re-anchor at the current power, maximize the surrogate, repeat
/// until the true objective stops improving. The objective trace is
/// non-decreasing; a round that would lower it is discarded. With
/// `screen_corners`, a corner point that beats the converged value seeds a
/// second SCALE run (the objective is non-concave and SCALE is local).
PcResult solve_pc(const Association& assoc, double q, const PowerAllocation& p_init,
                  const NetworkInstance& inst, const PcConfig& cfg);

}  // namespace hetnet

#endif  // HETNET_PC_SOLVER_HPP
