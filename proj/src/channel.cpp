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

#include "hetnet/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

namespace hetnet {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double path_loss_db(BsKind kind, double distance_km) {
  if (!(distance_km > 0.0)) {
    throw std::invalid_argument(
        fmt::format("path_loss_db: distance must be positive, got {}", distance_km));
  }
  const double lg = std::log10(distance_km);
  switch (kind) {
    case BsKind::Macro:
      return 128.1 + 37.6 * lg;
    case BsKind::Small:
      return 140.7 + 36.7 * lg;
  }
  throw std::invalid_argument("path_loss_db: unknown station kind");
}

double channel_gain(double pl_db, double shadow_db) {
  return std::pow(10.0, -(pl_db + shadow_db) / 10.0);
}

PowerProfile PowerProfile::defaults() {
  PowerProfile p;
  p.macro = StationProfile{dbm_to_watts(46.0), 4.0, 1.0, 10.0};
  p.small = StationProfile{dbm_to_watts(30.0), 2.0, 1.0, 0.1};
  p.bandwidth = 10e6;
  p.noise_power = dbm_to_watts(-104.0);
  return p;
}

void TopologyParams::validate() const {
  if (!(area_side > 0.0)) throw std::invalid_argument("area_side must be > 0");
  if (!(min_dist_mbs_ue > 0.0)) throw std::invalid_argument("min_dist_mbs_ue must be > 0");
  if (!(min_dist_sbs_ue > 0.0)) throw std::invalid_argument("min_dist_sbs_ue must be > 0");
  if (!(min_dist_ue_ue > 0.0)) throw std::invalid_argument("min_dist_ue_ue must be > 0");
  if (!(shadowing_std_db >= 0.0)) {
    throw std::invalid_argument("shadowing_std_db must be >= 0");
  }
  if (num_users < num_small_cells + 1) {
    throw std::invalid_argument(fmt::format(
        "num_users ({}) must be at least the number of stations ({})", num_users,
        num_small_cells + 1));
  }
}

void NetworkInstance::validate() const {
  const std::size_t K = num_stations();
  const std::size_t N = num_users();
  if (K == 0) throw std::invalid_argument("instance has no stations");
  if (N < K) {
    throw std::invalid_argument(
        fmt::format("instance has {} users but {} stations (need N >= K)", N, K));
  }
  if (static_cast<std::size_t>(gains.rows()) != N ||
      static_cast<std::size_t>(gains.cols()) != K) {
    throw std::invalid_argument(fmt::format("gain matrix is {}x{}, expected {}x{}",
                                            gains.rows(), gains.cols(), N, K));
  }
  if (!(gains.array() > 0.0).all() || !gains.allFinite()) {
    throw std::invalid_argument("all channel gains must be finite and > 0");
  }
  if (!(noise_power > 0.0)) throw std::invalid_argument("noise_power must be > 0");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
  if (!(static_power >= 0.0)) throw std::invalid_argument("static_power must be >= 0");
  std::size_t macros = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto& bs = stations[k];
    if (bs.id != k) throw std::invalid_argument("station ids must equal their index");
    if (bs.kind == BsKind::Macro) {
      ++macros;
      if (k != 0) throw std::invalid_argument("the macro station must have id 0");
    }
    if (!(bs.p_max > 0.0)) throw std::invalid_argument(fmt::format("station {}: p_max must be > 0", k));
    if (!(bs.varrho >= 1.0)) throw std::invalid_argument(fmt::format("station {}: varrho must be >= 1", k));
    if (!(bs.xi >= 0.0)) throw std::invalid_argument(fmt::format("station {}: xi must be >= 0", k));
  }
  if (macros != 1) throw std::invalid_argument("exactly one macro station is required");
}

NetworkInstance NetworkInstance::with_uniform_xi(double xi) const {
  NetworkInstance copy = *this;
  for (auto& bs : copy.stations) bs.xi = xi;
  return copy;
}

std::vector<double> NetworkInstance::max_powers() const {
  std::vector<double> p(stations.size());
  for (std::size_t k = 0; k < stations.size(); ++k) p[k] = stations[k].p_max;
  return p;
}

bool NetworkInstance::operator==(const NetworkInstance& other) const {
  return stations == other.stations && users == other.users &&
         gains.rows() == other.gains.rows() && gains.cols() == other.gains.cols() &&
         gains == other.gains && noise_power == other.noise_power &&
         bandwidth == other.bandwidth && static_power == other.static_power;
}

namespace {

BaseStation make_station(std::size_t id, BsKind kind, Point pos, const StationProfile& sp) {
  return BaseStation{id, kind, pos, sp.p_max, sp.varrho, sp.xi, sp.static_power};
}

}  // namespace

NetworkInstance generate_topology(const TopologyParams& params,
                                  const PowerProfile& profile) {
  params.validate();

  std::mt19937_64 rng(params.rng_seed);
  const double half = params.area_side / 2.0;
  std::uniform_real_distribution<double> coord(-half, half);

  NetworkInstance inst;
  inst.noise_power = profile.noise_power;
  inst.bandwidth = profile.bandwidth;

  inst.stations.push_back(make_station(0, BsKind::Macro, Point{0.0, 0.0}, profile.macro));
  for (std::size_t s = 0; s < params.num_small_cells; ++s) {
    const Point pos{coord(rng), coord(rng)};
    inst.stations.push_back(make_station(s + 1, BsKind::Small, pos, profile.small));
  }

  inst.users.reserve(params.num_users);
  for (std::size_t n = 0; n < params.num_users; ++n) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kMaxPlacementAttempts && !placed; ++attempt) {
      const Point pos{coord(rng), coord(rng)};
      bool ok = distance(pos, inst.stations[0].position) >= params.min_dist_mbs_ue;
      for (std::size_t k = 1; ok && k < inst.stations.size(); ++k) {
        ok = distance(pos, inst.stations[k].position) >= params.min_dist_sbs_ue;
      }
      for (std::size_t m = 0; ok && m < inst.users.size(); ++m) {
        ok = distance(pos, inst.users[m].position) >= params.min_dist_ue_ue;
      }
      if (ok) {
        inst.users.push_back(UserEquipment{n, pos});
        placed = true;
      }
    }
    if (!placed) {
      throw PlacementError(fmt::format(
          "could not place user {} after {} attempts (density too high)", n,
          kMaxPlacementAttempts));
    }
  }

  const std::size_t N = inst.users.size();
  const std::size_t K = inst.stations.size();
  std::normal_distribution<double> shadow(0.0, params.shadowing_std_db);
  inst.gains.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(K));
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      const double d_km = distance(inst.users[n].position, inst.stations[k].position) / 1000.0;
      const double sh = params.shadowing_std_db > 0.0 ? shadow(rng) : 0.0;
      inst.gains(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
          channel_gain(path_loss_db(inst.stations[k].kind, d_km), sh);
    }
  }

  inst.static_power = 0.0;
  for (const auto& bs : inst.stations) inst.static_power += bs.static_power;
  return inst;
}

double sinr(std::size_t n, std::size_t k, std::span<const double> power,
            const NetworkInstance& inst) {
  const auto row = inst.gains.row(static_cast<Eigen::Index>(n));
  double interference = inst.noise_power;
  for (std::size_t j = 0; j < power.size(); ++j) {
    if (j != k) interference += row(static_cast<Eigen::Index>(j)) * power[j];
  }
  return row(static_cast<Eigen::Index>(k)) * power[k] / interference;
}

double rate_from_sinr(double gamma, double bandwidth_hz) {
  return bandwidth_hz / 1e6 * std::log1p(gamma) / std::numbers::ln2;
}

double link_rate(std::size_t n, std::size_t k, std::span<const double> power,
                 const NetworkInstance& inst) {
  return rate_from_sinr(sinr(n, k, power, inst), inst.bandwidth);
}

Eigen::MatrixXd rate_matrix(std::span<const double> power, const NetworkInstance& inst) {
  const std::size_t N = inst.num_users();
  const std::size_t K = inst.num_stations();
  Eigen::MatrixXd r(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(K));
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      r(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) = link_rate(n, k, power, inst);
    }
  }
  return r;
}

std::string to_string(BsKind kind) { return kind == BsKind::Macro ? "macro" : "small"; }

BsKind bs_kind_from_string(const std::string& s) {
  if (s == "macro") return BsKind::Macro;
  if (s == "small") return BsKind::Small;
  throw std::invalid_argument("unknown station kind: " + s);
}

}  // namespace hetnet
