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

#ifndef HETNET_UA_SOLVER_HPP
#define HETNET_UA_SOLVER_HPP

#include <cstddef>
#include <optional>

#include <Eigen/Core>

#include "hetnet/channel.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

struct UaConfig {
  double eta = 1.0;                 // damping of the multiplier step, (0, 1]
  std::size_t sub_steps = 1;        // t/lambda updates per assignment pass
  std::size_t max_iterations = 200;
  double tolerance = 1e-8;          // fixed-point residual bound

  bool operator==(const UaConfig&) const = default;
  void validate() const;
};

/// Auxiliary rates t_nk and multipliers lambda_nk that drive the utilities.
struct UaState {
  Eigen::MatrixXd t;
  Eigen::MatrixXd lambda;
  Association assoc;
  std::size_t iteration = 0;
};

struct UaDiagnostics {
  std::size_t iterations_T1 = 0;
  std::size_t inner_updates_m = 0;
  bool converged = false;
  double objective = 0.0;        // value of the association objective
  double residual_t = 0.0;       // max |t_nk - r_nk / y_k|
  double residual_lambda = 0.0;  // max |lambda_nk - (1 - q xi_k) x_nk / y_k|
};

struct UaResult {
  Association assoc;
  UaState state;
  UaDiagnostics diagnostics;
};

/// (1 - q xi_k) t_nk - sum_i lambda_ik t_ik
double ua_utility(std::size_t n, std::size_t k, const Eigen::MatrixXd& t,
                  const Eigen::MatrixXd& lambda, double q, const NetworkInstance& inst);

/// Full N x K utility matrix; the penalty sum is computed once per station.
Eigen::MatrixXd ua_utilities(const Eigen::MatrixXd& t, const Eigen::MatrixXd& lambda, double q,
                             const NetworkInstance& inst);

/// sum_k (1 - q xi_k) / y_k sum_n x_nk r_nk for a fixed rate matrix.
double ua_objective(const Association& assoc, const Eigen::MatrixXd& rates, double q,
                    const NetworkInstance& inst);

/// Damped step of t and lambda toward their stationary values
/// t_nk = r_nk / y_k and lambda_nk = (1 - q xi_k) x_nk / y_k.
UaState update_t_lambda(UaState state, const Eigen::MatrixXd& rates, double q,
                        const NetworkInstance& inst, double eta);
UaState update_t_lambda(UaState state, const PowerAllocation& power, double q,
                        const NetworkInstance& inst, double eta);

/// State sitting exactly on the stationary values for `assoc`.
UaState stationary_state(const Association& assoc, const Eigen::MatrixXd& rates, double q,
                         const NetworkInstance& inst);

/// Residuals of the stationary equations for the state's association.
std::pair<double, double> stationarity_residuals(const UaState& state,
                                                 const Eigen::MatrixXd& rates, double q,
                                                 const NetworkInstance& inst);

/// Utility-driven association heuristic for fixed power and fixed q.
///
/// Each pass computes the utilities, lets every station in ascending order
/// claim its best unclaimed user, attaches all other users to their best
/// station, then moves t and lambda toward the stationary point of the new
/// association. Stops when the assignment repeats and the residuals are
/// below tolerance. Without a warm start the search begins from the max-gain
/// association with t = r and lambda = 0; with one, from the warm start's
/// stationary point. If the iteration cap is hit, the best association seen
/// (by `ua_objective`) is returned and flagged as not converged.
UaResult solve_ua(const PowerAllocation& power, double q, const NetworkInstance& inst,
                  const UaConfig& cfg, const std::optional<Association>& warm_start = {});

}  // namespace hetnet

#endif  // HETNET_UA_SOLVER_HPP
