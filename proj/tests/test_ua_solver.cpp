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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>

#include "hetnet/ua_solver.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

// Best value of the association objective over every feasible assignment,
// computed with the oracle's own rates.
double brute_force_best(const NetworkInstance& inst, const std::vector<double>& p, double q) {
  double best = -1e300;
  for (const auto& a : oracle::feasible_associations(inst.num_users(), inst.num_stations())) {
    // The oracle's parametric value minus the (assignment-independent) power term.
    double power_term = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) power_term += q * inst.stations[k].varrho * p[k];
    best = std::max(best, oracle::parametric(inst, a, p, q) + power_term);
  }
  return best;
}

}  // namespace

TEST_CASE("ua utility") {
  auto inst = oracle::random_instance(3, 2, 1, 1.0);
  Eigen::MatrixXd t(3, 2);
  t << 4, 1, 2, 3, 5, 6;

  SUBCASE("unpenalized") {
    const Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(3, 2);
    for (std::size_t n = 0; n < 3; ++n) {
      for (std::size_t k = 0; k < 2; ++k) {
        CHECK(ua_utility(n, k, t, lambda, 0.0, inst) == t(static_cast<long>(n), static_cast<long>(k)));
      }
    }
  }
  SUBCASE("weight at zero leaves only the penalty") {
    Eigen::MatrixXd lambda(3, 2);
    lambda << 0.5, 0, 0.25, 1, 0, 0;
    // q xi = 1 with xi = 1.
    const double penalty = 0.5 * 4 + 0.25 * 2;
    CHECK(ua_utility(0, 0, t, lambda, 1.0, inst) == doctest::Approx(-penalty));
  }
  SUBCASE("direct evaluation gives 2.6") {
    Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(3, 2);
    lambda(1, 0) = 0.5;  // 0.5 * t(1, 0) = 1
    CHECK(ua_utility(0, 0, t, lambda, 0.1, inst) == doctest::Approx(2.6).epsilon(1e-14));
    const auto u = ua_utilities(t, lambda, 0.1, inst);
    CHECK(u(0, 0) == doctest::Approx(2.6).epsilon(1e-14));
  }
}

TEST_CASE("t and lambda update") {
  const auto inst = oracle::random_instance(4, 2, 8, 1.0);
  const auto power = PowerAllocation::at_max(inst);
  const Eigen::MatrixXd rates = rate_matrix(power.watts, inst);
  const Association assoc({0, 0, 1, 1}, 2);

  SUBCASE("fixed point is unchanged") {
    const auto s = stationary_state(assoc, rates, 0.02, inst);
    const auto next = update_t_lambda(s, power, 0.02, inst, 0.5);
    CHECK((next.t - s.t).cwiseAbs().maxCoeff() == 0.0);
    CHECK((next.lambda - s.lambda).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("full step lands on the targets") {
    UaState s;
    s.assoc = assoc;
    s.t = Eigen::MatrixXd::Constant(4, 2, 3.0);
    s.lambda = Eigen::MatrixXd::Constant(4, 2, 0.7);
    const auto next = update_t_lambda(s, power, 0.0, inst, 1.0);
    const auto [rt, rl] = stationarity_residuals(next, rates, 0.0, inst);
    CHECK(rt == 0.0);
    CHECK(rl == 0.0);
    for (long n = 0; n < 4; ++n) {
      for (long k = 0; k < 2; ++k) CHECK(next.t(n, k) == doctest::Approx(rates(n, k) / 2.0));
    }
  }
  SUBCASE("q = 0, xi = 1, two users on the station gives lambda 0.5") {
    UaState s;
    s.assoc = assoc;
    s.t = Eigen::MatrixXd::Zero(4, 2);
    s.lambda = Eigen::MatrixXd::Zero(4, 2);
    const auto next = update_t_lambda(s, power, 0.0, inst, 1.0);
    CHECK(next.lambda(0, 0) == 0.5);
    CHECK(next.lambda(0, 1) == 0.0);
    CHECK(next.lambda(3, 1) == 0.5);
  }
  SUBCASE("damped step moves part of the way") {
    UaState s;
    s.assoc = assoc;
    s.t = Eigen::MatrixXd::Zero(4, 2);
    s.lambda = Eigen::MatrixXd::Zero(4, 2);
    const auto next = update_t_lambda(s, power, 0.0, inst, 0.25);
    CHECK(next.lambda(0, 0) == doctest::Approx(0.125));
    CHECK(next.t(2, 1) == doctest::Approx(0.25 * rates(2, 1) / 2.0));
  }
}

TEST_CASE("solve_ua trivial shapes") {
  const UaConfig cfg;
  SUBCASE("single station") {
    auto inst = oracle::random_instance(5, 1, 3);
    const auto r = solve_ua(PowerAllocation::at_max(inst), 0.0, inst, cfg);
    CHECK(r.assoc.load(0) == 5);
    CHECK(r.diagnostics.iterations_T1 == 1);
    CHECK(r.diagnostics.converged);
  }
  SUBCASE("perfect matching when N = K") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto inst = oracle::random_instance(4, 4, seed);
      const auto r = solve_ua(PowerAllocation::at_max(inst), 0.01, inst, cfg);
      for (std::size_t k = 0; k < 4; ++k) CHECK(r.assoc.load(k) == 1);
    }
  }
  SUBCASE("rejects N < K and negative q") {
    auto inst = oracle::random_instance(2, 3, 3);
    CHECK_THROWS_AS(solve_ua(PowerAllocation::at_max(inst), 0.0, inst, cfg), std::invalid_argument);
    auto ok = oracle::random_instance(3, 2, 3);
    CHECK_THROWS_AS(solve_ua(PowerAllocation::at_max(ok), -1.0, ok, cfg), std::invalid_argument);
  }
}

TEST_CASE("solve_ua output is feasible, stationary and deterministic") {
  const UaConfig cfg;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = oracle::random_instance(15, 4, 40 + seed, 2.0);
    const auto power = PowerAllocation::at_max(inst);
    const double q = 0.01 * static_cast<double>(seed % 5);
    const auto r = solve_ua(power, q, inst, cfg);
    CHECK(check_feasibility(r.assoc, power, inst).ok());
    if (r.diagnostics.converged) {
      CHECK(r.diagnostics.residual_t <= cfg.tolerance);
      CHECK(r.diagnostics.residual_lambda <= cfg.tolerance);
    }
    const auto again = solve_ua(power, q, inst, cfg);
    CHECK(again.assoc == r.assoc);
  }
}

TEST_CASE("solve_ua against exhaustive search on random K = 2, N = 3") {
  const UaConfig cfg;
  int matched = 0;
  const int trials = 100;
  double worst = 1.0;
  for (int seed = 0; seed < trials; ++seed) {
    auto inst = oracle::random_instance(3, 2, 1000 + static_cast<std::uint64_t>(seed), 1.0);
    const auto power = PowerAllocation::at_max(inst);
    const auto r = solve_ua(power, 0.0, inst, cfg);
    CHECK(check_feasibility(r.assoc, power, inst).ok());
    CHECK(r.diagnostics.converged);
    const double best = brute_force_best(inst, power.watts, 0.0);
    const double got = oracle::parametric(inst, r.assoc.assignment(), power.watts, 0.0);
    CHECK(got <= best * (1.0 + 1e-12));
    if (got >= best * (1.0 - 1e-9)) ++matched;
    worst = std::min(worst, got / best);
  }
  std::printf("ua exhaustive match K=2 N=3: %d/%d, worst ratio %.4f\n", matched, trials, worst);
  CHECK(matched == trials);
}

TEST_CASE("solve_ua against exhaustive search up to N = 8, K = 3") {
  const UaConfig cfg;
  int matched = 0;
  int trials = 0;
  double worst = 1.0;
  for (std::size_t K = 1; K <= 3; ++K) {
    for (std::size_t N = K; N <= 8; ++N) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = oracle::random_instance(N, K, 7000 + 100 * N + 10 * K + seed, 1.0);
        const auto power = PowerAllocation::at_max(inst);
        const auto r = solve_ua(power, 0.0, inst, cfg);
        const double best = brute_force_best(inst, power.watts, 0.0);
        const double got = oracle::parametric(inst, r.assoc.assignment(), power.watts, 0.0);
        ++trials;
        if (got >= best * (1.0 - 1e-9)) ++matched;
        worst = std::min(worst, got / best);
      }
    }
  }
  // Measured, not asserted: the heuristic carries no optimality guarantee.
  std::printf("ua exhaustive match N<=8 K<=3: %d/%d, worst ratio %.4f\n", matched, trials, worst);
  CHECK(worst > 0.0);
}

TEST_CASE("warm start from the stationary point") {
  const UaConfig cfg;
  auto inst = oracle::random_instance(10, 3, 55, 1.0);
  const auto power = PowerAllocation::at_max(inst);
  const auto cold = solve_ua(power, 0.02, inst, cfg);
  REQUIRE(cold.diagnostics.converged);
  const auto warm = solve_ua(power, 0.02, inst, cfg, cold.assoc);
  CHECK(warm.assoc == cold.assoc);
  CHECK(warm.diagnostics.converged);
  CHECK(warm.diagnostics.iterations_T1 == 1);
}

TEST_CASE("ua config validation") {
  UaConfig cfg;
  cfg.eta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.eta = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = UaConfig{};
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
