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

#ifndef HETNET_MODEL_HPP
#define HETNET_MODEL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hetnet/channel.hpp"

namespace hetnet {

/// User-to-station assignment. Stored as a vector (user n -> station k); the
/// binary matrix x is only materialized on demand. Every user is assigned to
/// exactly one station by construction, but stations may be left empty, so C2
/// has to be checked separately.
class Association {
 public:
  Association() = default;
  Association(std::vector<std::size_t> assign, std::size_t num_stations);

  std::size_t num_users() const { return assign_.size(); }
  std::size_t num_stations() const { return loads_.size(); }

  std::size_t serving(std::size_t n) const { return assign_[n]; }
  std::size_t load(std::size_t k) const { return loads_[k]; }
  const std::vector<std::size_t>& assignment() const { return assign_; }
  const std::vector<std::size_t>& loads() const { return loads_; }

  /// Dense N x K binary matrix x_nk.
  Eigen::MatrixXd indicator() const;
  static Association from_indicator(const Eigen::MatrixXd& x);

  /// Every station serves at least one user.
  bool covers_all_stations() const;

  bool operator==(const Association& other) const { return assign_ == other.assign_; }

 private:
  std::vector<std::size_t> assign_;
  std::vector<std::size_t> loads_;
};

struct PowerAllocation {
  std::vector<double> watts;

  static PowerAllocation at_max(const NetworkInstance& inst);

  bool operator==(const PowerAllocation&) const = default;
};

struct MetricBreakdown {
  double sum_effective_rate = 0.0;  // R, Mbps
  double access_power = 0.0;        // P_an, W
  double backhaul_power = 0.0;      // P_bh, W
  double total_power = 0.0;         // P, W
  double energy_efficiency = 0.0;   // Mbps/Joule
};

/// Outcome of the C1-C4 checks. Counts are numbers of offending users,
/// stations or entries.
struct FeasibilityReport {
  std::size_t c1_violations = 0;  // rows of x not summing to one
  std::size_t c2_violations = 0;  // stations with no user
  std::size_t c3_violations = 0;  // non-binary entries of x
  std::size_t c4_violations = 0;  // powers outside [0, p_max]
  std::size_t shape_errors = 0;

  bool ok() const {
    return c1_violations + c2_violations + c3_violations + c4_violations + shape_errors == 0;
  }
  std::string describe() const;
};

FeasibilityReport check_feasibility(const Eigen::MatrixXd& x, std::span<const double> power,
                                    const NetworkInstance& inst);
FeasibilityReport check_feasibility(const Association& assoc, const PowerAllocation& power,
                                    const NetworkInstance& inst);

/// r_nk / y_k
double effective_rate(std::size_t n, std::size_t k, const PowerAllocation& power,
                      const Association& assoc, const NetworkInstance& inst);

/// Rate of every user on its serving link, r_{n, k(n)}.
std::vector<double> served_rates(const Association& assoc, std::span<const double> power,
                                 const NetworkInstance& inst);

double sum_effective_rate(const Association& assoc, const PowerAllocation& power,
                          const NetworkInstance& inst);

/// Full breakdown: R, P_an = sum varrho_k p_k + P_c, P_bh, P and EE = R / P.
MetricBreakdown total_power(const Association& assoc, const PowerAllocation& power,
                            const NetworkInstance& inst);

double energy_efficiency(const Association& assoc, const PowerAllocation& power,
                         const NetworkInstance& inst);

/// Each user picks argmax_k score(n, k) (lowest k on ties), then empty
/// stations are filled by repair_coverage.
Association max_score_association(const Eigen::MatrixXd& score);

/// Fills empty stations: in ascending station order, each empty station takes
/// its highest-score user among those whose station serves at least two.
void repair_coverage(std::vector<std::size_t>& assign, std::size_t num_stations,
                     const Eigen::MatrixXd& score);

}  // namespace hetnet

#endif  // HETNET_MODEL_HPP
