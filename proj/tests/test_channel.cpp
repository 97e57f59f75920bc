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

#include <random>

#include "hetnet/channel.hpp"
#include "hetnet/serialization.hpp"
#include "oracles.hpp"

using namespace hetnet;

namespace {

NetworkInstance single_link(double gain, double noise) {
  NetworkInstance inst;
  inst.stations.push_back(BaseStation{0, BsKind::Macro, {}, 1.0, 1.0, 0.0, 0.0});
  inst.users.push_back(UserEquipment{0, {}});
  inst.gains = Eigen::MatrixXd::Constant(1, 1, gain);
  inst.noise_power = noise;
  inst.bandwidth = 10e6;
  return inst;
}

}  // namespace

TEST_CASE("path loss constants at 1 km") {
  CHECK(path_loss_db(BsKind::Macro, 1.0) == 128.1);
  CHECK(path_loss_db(BsKind::Small, 1.0) == 140.7);
  CHECK(path_loss_db(BsKind::Macro, 0.1) == doctest::Approx(90.5).epsilon(1e-14));
}

TEST_CASE("path loss rejects non-positive distance") {
  CHECK_THROWS_AS(path_loss_db(BsKind::Macro, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_db(BsKind::Small, -1.0), std::invalid_argument);
}

TEST_CASE("channel gain") {
  CHECK(channel_gain(90.5, 0.0) == doctest::Approx(8.912509381337441e-10).epsilon(1e-12));
  CHECK(channel_gain(0.0, 0.0) == 1.0);
  CHECK(channel_gain(10.0, -10.0) == 1.0);
}

TEST_CASE("sinr") {
  SUBCASE("single cell reduces to g p / n0") {
    const auto inst = single_link(1e-9, 1e-10);
    const std::vector<double> p{1.0};
    CHECK(sinr(0, 0, p, inst) == doctest::Approx(10.0).epsilon(1e-14));
  }
  SUBCASE("zero signal") {
    const auto inst = single_link(1e-9, 1e-10);
    const std::vector<double> p{0.0};
    CHECK(sinr(0, 0, p, inst) == 0.0);
  }
  SUBCASE("symmetric two-cell") {
    NetworkInstance inst = single_link(1e-9, 1e-24);
    inst.stations.push_back(BaseStation{1, BsKind::Small, {}, 1.0, 1.0, 0.0, 0.0});
    inst.gains = Eigen::MatrixXd::Constant(1, 2, 1e-9);
    const std::vector<double> p{1.0, 1.0};
    CHECK(sinr(0, 0, p, inst) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("link rate") {
  CHECK(rate_from_sinr(0.0, 10e6) == 0.0);
  CHECK(rate_from_sinr(1.0, 10e6) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(rate_from_sinr(3.0, 10e6) == doctest::Approx(20.0).epsilon(1e-14));

  const auto inst = single_link(1e-9, 1e-9);
  const std::vector<double> p{1.0};
  CHECK(link_rate(0, 0, p, inst) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("sinr monotonicity on random instances") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = oracle::random_instance(5, 4, 100 + trial);
    std::vector<double> p(4);
    for (auto& v : p) v = u(rng);
    for (std::size_t n = 0; n < 5; ++n) {
      for (std::size_t k = 0; k < 4; ++k) {
        const double base = sinr(n, k, p, inst);
        auto up = p;
        up[k] *= 1.5;
        CHECK(sinr(n, k, up, inst) > base);
        for (std::size_t j = 0; j < 4; ++j) {
          if (j == k) continue;
          auto more = p;
          more[j] *= 1.5;
          CHECK(sinr(n, k, more, inst) < base);
        }
      }
    }
  }
}

TEST_CASE("default topology") {
  const TopologyParams params;
  const auto inst = generate_topology(params, PowerProfile::defaults());
  CHECK(inst.num_stations() == 9);
  CHECK(inst.num_users() == 240);
  CHECK_NOTHROW(inst.validate());
  CHECK(inst.stations[0].kind == BsKind::Macro);
  CHECK(inst.stations[0].position == Point{0.0, 0.0});
  CHECK(inst.static_power == doctest::Approx(10.8));
  CHECK(inst.stations[0].p_max == doctest::Approx(39.810717055349734));
  CHECK(inst.stations[1].p_max == doctest::Approx(1.0));
  CHECK(inst.noise_power == doctest::Approx(3.9810717055349693e-14));

  const double half = params.area_side / 2.0;
  for (const auto& ue : inst.users) {
    CHECK(std::abs(ue.position.x) <= half);
    CHECK(std::abs(ue.position.y) <= half);
    CHECK(distance(ue.position, inst.stations[0].position) >= params.min_dist_mbs_ue);
    for (std::size_t k = 1; k < inst.num_stations(); ++k) {
      CHECK(distance(ue.position, inst.stations[k].position) >= params.min_dist_sbs_ue);
    }
  }
  for (std::size_t a = 0; a < inst.num_users(); ++a) {
    for (std::size_t b = a + 1; b < inst.num_users(); ++b) {
      REQUIRE(distance(inst.users[a].position, inst.users[b].position) >= params.min_dist_ue_ue);
    }
  }
}

TEST_CASE("topology generation is deterministic in the seed") {
  TopologyParams params;
  params.rng_seed = 42;
  const auto a = generate_topology(params, PowerProfile::defaults());
  const auto b = generate_topology(params, PowerProfile::defaults());
  CHECK(a == b);
  params.rng_seed = 43;
  const auto c = generate_topology(params, PowerProfile::defaults());
  CHECK_FALSE(a.gains == c.gains);
}

TEST_CASE("topology parameter errors") {
  TopologyParams params;
  params.num_users = 0;
  CHECK_THROWS_AS(generate_topology(params, PowerProfile::defaults()), std::invalid_argument);

  TopologyParams crowded;
  crowded.area_side = 20.0;
  crowded.num_users = 50;
  crowded.num_small_cells = 1;
  CHECK_THROWS_AS(generate_topology(crowded, PowerProfile::defaults()), PlacementError);
}

TEST_CASE("instance validation") {
  auto inst = oracle::random_instance(3, 2, 1);
  CHECK_NOTHROW(inst.validate());

  auto neg = inst;
  neg.gains(0, 0) = 0.0;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);

  auto few = oracle::random_instance(1, 2, 1);
  CHECK_THROWS_AS(few.validate(), std::invalid_argument);

  auto two_macros = inst;
  two_macros.stations[1].kind = BsKind::Macro;
  CHECK_THROWS_AS(two_macros.validate(), std::invalid_argument);
}

TEST_CASE("instance json round-trip is exact") {
  TopologyParams params;
  params.num_users = 30;
  params.rng_seed = 9;
  const auto inst = generate_topology(params, PowerProfile::defaults());
  const nlohmann::json j = inst;
  const auto back = nlohmann::json::parse(j.dump()).get<NetworkInstance>();
  CHECK(back == inst);
}
