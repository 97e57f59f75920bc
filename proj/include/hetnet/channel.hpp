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

#ifndef HETNET_CHANNEL_HPP
#define HETNET_CHANNEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hetnet {

enum class BsKind { Macro, Small };

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

/// One transmitter of the two-tier network. The macro station is always id 0.
struct BaseStation {
  std::size_t id = 0;
  BsKind kind = BsKind::Small;
  Point position;
  double p_max = 1.0;   // W
  double varrho = 1.0;  // inverse PA efficiency
  double xi = 0.0;      // W per Mbps carried on the backhaul
  double static_power = 0.0;  // W, fixed circuit consumption

  bool operator==(const BaseStation&) const = default;
};

struct UserEquipment {
  std::size_t id = 0;
  Point position;

  bool operator==(const UserEquipment&) const = default;
};

/// Immutable scenario consumed by every solver.
///
/// `gains(n, k)` is the linear channel gain between user n and station k.
/// `static_power` is P_c, the sum of the per-station static consumptions.
struct NetworkInstance {
  std::vector<BaseStation> stations;
  std::vector<UserEquipment> users;
  Eigen::MatrixXd gains;
  double noise_power = 0.0;  // W
  double bandwidth = 0.0;    // Hz
  double static_power = 0.0; // W

  std::size_t num_users() const { return users.size(); }
  std::size_t num_stations() const { return stations.size(); }

  /// Throws std::invalid_argument describing the first broken invariant.
  void validate() const;

  /// Copy with xi_k overridden on every station.
  NetworkInstance with_uniform_xi(double xi) const;

  std::vector<double> max_powers() const;

  bool operator==(const NetworkInstance& other) const;
};

struct TopologyParams {
  double area_side = 500.0;  // m, square centred on the macro station
  std::size_t num_small_cells = 8;
  std::size_t num_users = 240;
  double min_dist_mbs_ue = 35.0;
  double min_dist_sbs_ue = 10.0;
  double min_dist_ue_ue = 3.0;
  double shadowing_std_db = 8.0;
  std::uint64_t rng_seed = 1;

  bool operator==(const TopologyParams&) const = default;

  void validate() const;
};

struct StationProfile {
  double p_max = 1.0;
  double varrho = 1.0;
  double xi = 0.0;
  double static_power = 0.0;

  bool operator==(const StationProfile&) const = default;
};

/// Per-kind radio and power parameters used when materializing a topology.
struct PowerProfile {
  StationProfile macro;
  StationProfile small;
  double bandwidth = 10e6;  // Hz
  double noise_power = 0.0; // W

  bool operator==(const PowerProfile&) const = default;

  /// 46/30 dBm, 10/0.1 W static, varrho 4/2, xi 1 W/Mbps, 10 MHz, -104 dBm.
  static PowerProfile defaults();
};

/// Thrown when rejection sampling cannot place a node within the attempt cap.
class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxPlacementAttempts = 10000;

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Macro: 128.1 + 37.6 log10(d), small: 140.7 + 36.7 log10(d), d in km.
double path_loss_db(BsKind kind, double distance_km);

/// 10^(-(pl_db + shadow_db) / 10)
double channel_gain(double pl_db, double shadow_db);

/// Random topology: macro at the centre, small cells uniform in the square,
/// users uniform subject to the minimum distances. Deterministic in the seed.
NetworkInstance generate_topology(const TopologyParams& params,
                                  const PowerProfile& profile);

double sinr(std::size_t n, std::size_t k, std::span<const double> power,
            const NetworkInstance& inst);

/// Shannon rate in Mbps for a given SINR.
double rate_from_sinr(double gamma, double bandwidth_hz);

/// (bandwidth / 1e6) * log2(1 + sinr), Mbps.
double link_rate(std::size_t n, std::size_t k, std::span<const double> power,
                 const NetworkInstance& inst);

/// N x K matrix of link rates for every (user, station) pair.
Eigen::MatrixXd rate_matrix(std::span<const double> power,
                            const NetworkInstance& inst);

std::string to_string(BsKind kind);
BsKind bs_kind_from_string(const std::string& s);

}  // namespace hetnet

#endif  // HETNET_CHANNEL_HPP
