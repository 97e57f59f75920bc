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

#include "hetnet/model.hpp"

#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace hetnet {

Association::Association(std::vector<std::size_t> assign, std::size_t num_stations)
    : assign_(std::move(assign)), loads_(num_stations, 0) {
  for (std::size_t n = 0; n < assign_.size(); ++n) {
    if (assign_[n] >= num_stations) {
      throw std::invalid_argument(fmt::format(
          "user {} assigned to station {} but only {} exist", n, assign_[n], num_stations));
    }
    ++loads_[assign_[n]];
  }
}

Eigen::MatrixXd Association::indicator() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_users()),
                                            static_cast<Eigen::Index>(num_stations()));
  for (std::size_t n = 0; n < assign_.size(); ++n) {
    x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(assign_[n])) = 1.0;
  }
  return x;
}

Association Association::from_indicator(const Eigen::MatrixXd& x) {
  std::vector<std::size_t> assign(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index n = 0; n < x.rows(); ++n) {
    Eigen::Index k = 0;
    if (x.row(n).sum() != 1.0 || x.row(n).maxCoeff(&k) != 1.0) {
      throw std::invalid_argument(fmt::format("row {} of x is not a unit vector", n));
    }
    assign[static_cast<std::size_t>(n)] = static_cast<std::size_t>(k);
  }
  return Association(std::move(assign), static_cast<std::size_t>(x.cols()));
}

bool Association::covers_all_stations() const {
  for (auto y : loads_) {
    if (y == 0) return false;
  }
  return true;
}

PowerAllocation PowerAllocation::at_max(const NetworkInstance& inst) {
  return PowerAllocation{inst.max_powers()};
}

std::string FeasibilityReport::describe() const {
  if (ok()) return "feasible";
  return fmt::format("C1:{} C2:{} C3:{} C4:{} shape:{}", c1_violations, c2_violations,
                     c3_violations, c4_violations, shape_errors);
}

FeasibilityReport check_feasibility(const Eigen::MatrixXd& x, std::span<const double> power,
                                    const NetworkInstance& inst) {
  FeasibilityReport rep;
  const auto N = static_cast<Eigen::Index>(inst.num_users());
  const auto K = static_cast<Eigen::Index>(inst.num_stations());
  if (x.rows() != N || x.cols() != K || power.size() != inst.num_stations()) {
    rep.shape_errors = 1;
    return rep;
  }
  for (Eigen::Index n = 0; n < N; ++n) {
    if (x.row(n).sum() != 1.0) ++rep.c1_violations;
    for (Eigen::Index k = 0; k < K; ++k) {
      if (x(n, k) != 0.0 && x(n, k) != 1.0) ++rep.c3_violations;
    }
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    if (x.col(k).sum() < 1.0) ++rep.c2_violations;
  }
  for (std::size_t k = 0; k < power.size(); ++k) {
    if (!(power[k] >= 0.0) || power[k] > inst.stations[k].p_max) ++rep.c4_violations;
  }
  return rep;
}

FeasibilityReport check_feasibility(const Association& assoc, const PowerAllocation& power,
                                    const NetworkInstance& inst) {
  if (assoc.num_users() != inst.num_users() || assoc.num_stations() != inst.num_stations()) {
    FeasibilityReport rep;
    rep.shape_errors = 1;
    return rep;
  }
  return check_feasibility(assoc.indicator(), power.watts, inst);
}

double effective_rate(std::size_t n, std::size_t k, const PowerAllocation& power,
                      const Association& assoc, const NetworkInstance& inst) {
  return link_rate(n, k, power.watts, inst) / static_cast<double>(assoc.load(k));
}

std::vector<double> served_rates(const Association& assoc, std::span<const double> power,
                                 const NetworkInstance& inst) {
  std::vector<double> r(assoc.num_users());
  for (std::size_t n = 0; n < r.size(); ++n) r[n] = link_rate(n, assoc.serving(n), power, inst);
  return r;
}

namespace {

// Per-station sum of effective rates, (1 / y_k) sum_n x_nk r_nk.
std::vector<double> per_station_effective_rate(const Association& assoc,
                                               std::span<const double> power,
                                               const NetworkInstance& inst) {
  std::vector<double> acc(assoc.num_stations(), 0.0);
  const auto r = served_rates(assoc, power, inst);
  for (std::size_t n = 0; n < r.size(); ++n) acc[assoc.serving(n)] += r[n];
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (assoc.load(k) > 0) acc[k] /= static_cast<double>(assoc.load(k));
  }
  return acc;
}

}  // namespace

double sum_effective_rate(const Association& assoc, const PowerAllocation& power,
                          const NetworkInstance& inst) {
  double total = 0.0;
  for (double v : per_station_effective_rate(assoc, power.watts, inst)) total += v;
  return total;
}

MetricBreakdown total_power(const Association& assoc, const PowerAllocation& power,
                            const NetworkInstance& inst) {
  MetricBreakdown m;
  const auto per_bs = per_station_effective_rate(assoc, power.watts, inst);
  m.access_power = inst.static_power;
  for (std::size_t k = 0; k < per_bs.size(); ++k) {
    m.sum_effective_rate += per_bs[k];
    m.access_power += inst.stations[k].varrho * power.watts[k];
    m.backhaul_power += inst.stations[k].xi * per_bs[k];
  }
  m.total_power = m.access_power + m.backhaul_power;
  m.energy_efficiency = m.total_power > 0.0 ? m.sum_effective_rate / m.total_power : 0.0;
  return m;
}

double energy_efficiency(const Association& assoc, const PowerAllocation& power,
                         const NetworkInstance& inst) {
  return total_power(assoc, power, inst).energy_efficiency;
}

void repair_coverage(std::vector<std::size_t>& assign, std::size_t num_stations,
                     const Eigen::MatrixXd& score) {
  if (assign.size() < num_stations) {
    throw std::invalid_argument("cannot cover every station with fewer users than stations");
  }
  std::vector<std::size_t> loads(num_stations, 0);
  for (auto k : assign) ++loads[k];
  for (std::size_t k = 0; k < num_stations; ++k) {
    if (loads[k] > 0) continue;
    std::size_t best = assign.size();
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < assign.size(); ++n) {
      if (loads[assign[n]] < 2) continue;
      const double s = score(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
      if (best == assign.size() || s > best_score) {
        best = n;
        best_score = s;
      }
    }
    // N >= K guarantees some station holds two users while k is empty.
    --loads[assign[best]];
    assign[best] = k;
    ++loads[k];
  }
}

Association max_score_association(const Eigen::MatrixXd& score) {
  const auto N = static_cast<std::size_t>(score.rows());
  const auto K = static_cast<std::size_t>(score.cols());
  std::vector<std::size_t> assign(N);
  for (std::size_t n = 0; n < N; ++n) {
    Eigen::Index k = 0;
    score.row(static_cast<Eigen::Index>(n)).maxCoeff(&k);
    assign[n] = static_cast<std::size_t>(k);
  }
  repair_coverage(assign, K, score);
  return Association(std::move(assign), K);
}

}  // namespace hetnet
