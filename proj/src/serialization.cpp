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

#include "hetnet/serialization.hpp"

namespace hetnet {

using nlohmann::json;

void to_json(json& j, const Point& p) { j = json::array({p.x, p.y}); }

void from_json(const json& j, Point& p) {
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

void to_json(json& j, const BaseStation& bs) {
  j = json{{"id", bs.id},         {"kind", to_string(bs.kind)}, {"position", bs.position},
           {"p_max", bs.p_max},   {"varrho", bs.varrho},        {"xi", bs.xi},
           {"static_power", bs.static_power}};
}

void from_json(const json& j, BaseStation& bs) {
  bs.id = j.at("id").get<std::size_t>();
  bs.kind = bs_kind_from_string(j.at("kind").get<std::string>());
  bs.position = j.at("position").get<Point>();
  bs.p_max = j.at("p_max").get<double>();
  bs.varrho = j.at("varrho").get<double>();
  bs.xi = j.at("xi").get<double>();
  bs.static_power = j.at("static_power").get<double>();
}

void to_json(json& j, const UserEquipment& ue) {
  j = json{{"id", ue.id}, {"position", ue.position}};
}

void from_json(const json& j, UserEquipment& ue) {
  ue.id = j.at("id").get<std::size_t>();
  ue.position = j.at("position").get<Point>();
}

void to_json(json& j, const NetworkInstance& inst) {
  json gains = json::array();
  for (Eigen::Index n = 0; n < inst.gains.rows(); ++n) {
    json row = json::array();
    for (Eigen::Index k = 0; k < inst.gains.cols(); ++k) row.push_back(inst.gains(n, k));
    gains.push_back(std::move(row));
  }
  j = json{{"stations", inst.stations},
           {"users", inst.users},
           {"gains", std::move(gains)},
           {"noise_power", inst.noise_power},
           {"bandwidth", inst.bandwidth},
           {"static_power", inst.static_power}};
}

void from_json(const json& j, NetworkInstance& inst) {
  inst.stations = j.at("stations").get<std::vector<BaseStation>>();
  inst.users = j.at("users").get<std::vector<UserEquipment>>();
  const auto& rows = j.at("gains");
  const auto N = static_cast<Eigen::Index>(rows.size());
  const auto K = static_cast<Eigen::Index>(inst.stations.size());
  inst.gains.resize(N, K);
  for (Eigen::Index n = 0; n < N; ++n) {
    const auto& row = rows.at(static_cast<std::size_t>(n));
    if (static_cast<Eigen::Index>(row.size()) != K) {
      throw std::invalid_argument("gain row length does not match the station count");
    }
    for (Eigen::Index k = 0; k < K; ++k) inst.gains(n, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  inst.noise_power = j.at("noise_power").get<double>();
  inst.bandwidth = j.at("bandwidth").get<double>();
  inst.static_power = j.at("static_power").get<double>();
  inst.validate();
}

void to_json(json& j, const MetricBreakdown& m) {
  j = json{{"sum_effective_rate", m.sum_effective_rate},
           {"access_power", m.access_power},
           {"backhaul_power", m.backhaul_power},
           {"total_power", m.total_power},
           {"energy_efficiency", m.energy_efficiency}};
}

void from_json(const json& j, MetricBreakdown& m) {
  m.sum_effective_rate = j.at("sum_effective_rate").get<double>();
  m.access_power = j.at("access_power").get<double>();
  m.backhaul_power = j.at("backhaul_power").get<double>();
  m.total_power = j.at("total_power").get<double>();
  m.energy_efficiency = j.at("energy_efficiency").get<double>();
}

void to_json(json& j, const SolverCounters& c) {
  j = json{{"T1", c.T1}, {"m", c.m}, {"T2", c.T2}, {"L", c.L}, {"T3", c.T3}};
}

void to_json(json& j, const Solution& s) {
  j = json{{"q_star", s.q_star},
           {"converged", s.converged},
           {"metrics", s.metrics},
           {"q_trace", s.q_trace},
           {"counters", s.counters()},
           {"association", s.assoc.assignment()},
           {"power", s.power.watts}};
}

}  // namespace hetnet
