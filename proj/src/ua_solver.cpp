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

#include "hetnet/ua_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hetnet {

namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

double weight(const NetworkInstance& inst, std::size_t k, double q) {
  return 1.0 - q * inst.stations[k].xi;
}

}  // namespace

void UaConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("ua.eta must lie in (0, 1]");
  if (sub_steps < 1) throw std::invalid_argument("ua.sub_steps must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("ua.max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("ua.tolerance must be > 0");
}

double ua_utility(std::size_t n, std::size_t k, const Eigen::MatrixXd& t,
                  const Eigen::MatrixXd& lambda, double q, const NetworkInstance& inst) {
  const double penalty = lambda.col(ix(k)).dot(t.col(ix(k)));
  return weight(inst, k, q) * t(ix(n), ix(k)) - penalty;
}

Eigen::MatrixXd ua_utilities(const Eigen::MatrixXd& t, const Eigen::MatrixXd& lambda, double q,
                             const NetworkInstance& inst) {
  Eigen::MatrixXd u(t.rows(), t.cols());
  for (Index k = 0; k < t.cols(); ++k) {
    const double penalty = lambda.col(k).dot(t.col(k));
    u.col(k) = weight(inst, static_cast<std::size_t>(k), q) * t.col(k).array() - penalty;
  }
  return u;
}

double ua_objective(const Association& assoc, const Eigen::MatrixXd& rates, double q,
                    const NetworkInstance& inst) {
  std::vector<double> per_bs(assoc.num_stations(), 0.0);
  for (std::size_t n = 0; n < assoc.num_users(); ++n) {
    per_bs[assoc.serving(n)] += rates(ix(n), ix(assoc.serving(n)));
  }
  double obj = 0.0;
  for (std::size_t k = 0; k < per_bs.size(); ++k) {
    if (assoc.load(k) == 0) continue;
    obj += weight(inst, k, q) / static_cast<double>(assoc.load(k)) * per_bs[k];
  }
  return obj;
}

namespace {

// Stationary targets for the current association, written into t_target and
// lambda_target.
void targets(const Association& assoc, const Eigen::MatrixXd& rates, double q,
             const NetworkInstance& inst, Eigen::MatrixXd& t_target,
             Eigen::MatrixXd& lambda_target) {
  const Index N = rates.rows();
  const Index K = rates.cols();
  t_target.resize(N, K);
  lambda_target.setZero(N, K);
  for (Index k = 0; k < K; ++k) {
    const auto y = static_cast<double>(assoc.load(static_cast<std::size_t>(k)));
    // An empty station has no stationary point; treat it as unit load.
    const double inv_y = y > 0.0 ? 1.0 / y : 1.0;
    t_target.col(k) = rates.col(k) * inv_y;
  }
  for (Index n = 0; n < N; ++n) {
    const std::size_t k = assoc.serving(static_cast<std::size_t>(n));
    lambda_target(n, ix(k)) = weight(inst, k, q) / static_cast<double>(assoc.load(k));
  }
}

}  // namespace

UaState update_t_lambda(UaState state, const Eigen::MatrixXd& rates, double q,
                        const NetworkInstance& inst, double eta) {
  Eigen::MatrixXd t_target;
  Eigen::MatrixXd lambda_target;
  targets(state.assoc, rates, q, inst, t_target, lambda_target);
  if (eta == 1.0) {
    state.t = std::move(t_target);
    state.lambda = std::move(lambda_target);
  } else {
    state.t += eta * (t_target - state.t);
    state.lambda += eta * (lambda_target - state.lambda);
  }
  // Both targets are non-negative except lambda when q xi_k > 1.
  state.t = state.t.cwiseMax(0.0);
  state.lambda = state.lambda.cwiseMax(0.0);
  return state;
}

UaState update_t_lambda(UaState state, const PowerAllocation& power, double q,
                        const NetworkInstance& inst, double eta) {
  return update_t_lambda(std::move(state), rate_matrix(power.watts, inst), q, inst, eta);
}

UaState stationary_state(const Association& assoc, const Eigen::MatrixXd& rates, double q,
                         const NetworkInstance& inst) {
  UaState s;
  s.assoc = assoc;
  targets(assoc, rates, q, inst, s.t, s.lambda);
  s.lambda = s.lambda.cwiseMax(0.0);
  return s;
}

std::pair<double, double> stationarity_residuals(const UaState& state,
                                                 const Eigen::MatrixXd& rates, double q,
                                                 const NetworkInstance& inst) {
  Eigen::MatrixXd t_target;
  Eigen::MatrixXd lambda_target;
  targets(state.assoc, rates, q, inst, t_target, lambda_target);
  lambda_target = lambda_target.cwiseMax(0.0);
  return {(state.t - t_target).cwiseAbs().maxCoeff(),
          (state.lambda - lambda_target).cwiseAbs().maxCoeff()};
}

namespace {

// One claim-then-attach pass over the utility matrix.
Association assign_by_utility(const Eigen::MatrixXd& u) {
  const auto N = static_cast<std::size_t>(u.rows());
  const auto K = static_cast<std::size_t>(u.cols());
  constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> assign(N, kUnassigned);

  for (std::size_t k = 0; k < K; ++k) {
    std::size_t best = kUnassigned;
    for (std::size_t n = 0; n < N; ++n) {
      if (assign[n] != kUnassigned) continue;
      if (best == kUnassigned || u(ix(n), ix(k)) > u(ix(best), ix(k))) best = n;
    }
    assign[best] = k;
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (assign[n] != kUnassigned) continue;
    Index k = 0;
    u.row(ix(n)).maxCoeff(&k);
    assign[n] = static_cast<std::size_t>(k);
  }
  return Association(std::move(assign), K);
}

}  // namespace

UaResult solve_ua(const PowerAllocation& power, double q, const NetworkInstance& inst,
                  const UaConfig& cfg, const std::optional<Association>& warm_start) {
  if (inst.num_users() < inst.num_stations()) {
    throw std::invalid_argument("solve_ua: need at least as many users as stations");
  }
  if (!(q >= 0.0)) throw std::invalid_argument("solve_ua: q must be >= 0");
  cfg.validate();

  const Eigen::MatrixXd rates = rate_matrix(power.watts, inst);

  UaState state;
  if (warm_start) {
    state = stationary_state(*warm_start, rates, q, inst);
  } else {
    state.assoc = max_score_association(inst.gains);
    state.t = rates;
    state.lambda = Eigen::MatrixXd::Zero(rates.rows(), rates.cols());
  }

  UaDiagnostics diag;
  UaState best = state;
  double best_obj = ua_objective(state.assoc, rates, q, inst);

  // The assignment produced by the utilities of the current (t, lambda). A
  // pass has converged only when the state is stationary for its association
  // and the utilities evaluated there reproduce that same association.
  Association next = assign_by_utility(ua_utilities(state.t, state.lambda, q, inst));
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    state.assoc = std::move(next);
    for (std::size_t s = 0; s < cfg.sub_steps; ++s) {
      state = update_t_lambda(std::move(state), rates, q, inst, cfg.eta);
      ++diag.inner_updates_m;
    }
    state.iteration = it;
    diag.iterations_T1 = it;

    const double obj = ua_objective(state.assoc, rates, q, inst);
    if (obj > best_obj) {
      best_obj = obj;
      best = state;
    }

    next = assign_by_utility(ua_utilities(state.t, state.lambda, q, inst));
    const auto [res_t, res_lambda] = stationarity_residuals(state, rates, q, inst);
    if (next == state.assoc && res_t <= cfg.tolerance && res_lambda <= cfg.tolerance) {
      diag.converged = true;
      break;
    }
  }

  UaResult result;
  if (diag.converged) {
    result.state = std::move(state);
  } else {
    result.state = std::move(best);
  }
  result.assoc = result.state.assoc;
  diag.objective = ua_objective(result.assoc, rates, q, inst);
  std::tie(diag.residual_t, diag.residual_lambda) =
      stationarity_residuals(result.state, rates, q, inst);
  result.diagnostics = diag;
  return result;
}

}  // namespace hetnet
