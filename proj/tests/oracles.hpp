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

// Test-only reference computations. Everything here is written from the
// model definitions directly and does not call into the solver library, so
// it can serve as an independent check of it.

#ifndef HETNET_TESTS_ORACLES_HPP
#define HETNET_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "hetnet/channel.hpp"

namespace oracle {

using Assign = std::vector<std::size_t>;

inline double rate_mbps(const hetnet::NetworkInstance& inst, std::size_t n, std::size_t k,
                        const std::vector<double>& p) {
  double interference = inst.noise_power;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j != k) interference += inst.gains(static_cast<long>(n), static_cast<long>(j)) * p[j];
  }
  const double sinr = inst.gains(static_cast<long>(n), static_cast<long>(k)) * p[k] / interference;
  return inst.bandwidth * 1e-6 * std::log2(1.0 + sinr);
}

struct Metrics {
  double R = 0.0;
  double P_an = 0.0;
  double P_bh = 0.0;
  double P = 0.0;
  double EE = 0.0;
};

/// Double sums over the dense indicator x_nk, straight from the definitions.
inline Metrics metrics(const hetnet::NetworkInstance& inst, const Assign& a,
                       const std::vector<double>& p) {
  const std::size_t N = inst.num_users();
  const std::size_t K = inst.num_stations();
  std::vector<std::vector<int>> x(N, std::vector<int>(K, 0));
  for (std::size_t n = 0; n < N; ++n) x[n][a[n]] = 1;
  Metrics m;
  for (std::size_t k = 0; k < K; ++k) {
    int y = 0;
    for (std::size_t n = 0; n < N; ++n) y += x[n][k];
    double carried = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
      if (x[n][k]) carried += rate_mbps(inst, n, k, p);
    }
    if (y > 0) {
      m.R += carried / y;
      m.P_bh += inst.stations[k].xi / y * carried;
    }
    m.P_an += inst.stations[k].varrho * p[k];
  }
  m.P_an += inst.static_power;
  m.P = m.P_an + m.P_bh;
  m.EE = m.R / m.P;
  return m;
}

/// sum_k (1 - q xi_k) / y_k sum_n x_nk r_nk - q sum_k varrho_k p_k
inline double parametric(const hetnet::NetworkInstance& inst, const Assign& a,
                         const std::vector<double>& p, double q) {
  const std::size_t K = inst.num_stations();
  std::vector<double> carried(K, 0.0);
  std::vector<int> y(K, 0);
  for (std::size_t n = 0; n < a.size(); ++n) {
    carried[a[n]] += rate_mbps(inst, n, a[n], p);
    ++y[a[n]];
  }
  double v = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    if (y[k] > 0) v += (1.0 - q * inst.stations[k].xi) / y[k] * carried[k];
    v -= q * inst.stations[k].varrho * p[k];
  }
  return v;
}

/// Every assignment of N users to K stations leaving no station empty.
inline std::vector<Assign> feasible_associations(std::size_t N, std::size_t K) {
  std::vector<Assign> out;
  Assign a(N, 0);
  for (;;) {
    std::vector<int> seen(K, 0);
    for (auto k : a) seen[k] = 1;
    bool covers = true;
    for (auto s : seen) covers = covers && s;
    if (covers) out.push_back(a);
    std::size_t i = 0;
    while (i < N && ++a[i] == K) a[i++] = 0;
    if (i == N) break;
  }
  return out;
}

/// Log-spaced levels p_max * 10^(-decades) ... p_max.
inline std::vector<double> log_grid(double p_max, double decades, std::size_t levels) {
  std::vector<double> g(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    const double frac = levels == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(levels - 1);
    g[i] = p_max * std::pow(10.0, -decades * (1.0 - frac));
  }
  return g;
}

/// Central differences of f at x.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Hand-built instance: station 0 is the macro cell, gains drawn log-uniformly.
inline hetnet::NetworkInstance random_instance(std::size_t N, std::size_t K, std::uint64_t seed,
                                               double xi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> exponent(-13.0, -8.0);
  hetnet::NetworkInstance inst;
  for (std::size_t k = 0; k < K; ++k) {
    hetnet::BaseStation bs;
    bs.id = k;
    bs.kind = k == 0 ? hetnet::BsKind::Macro : hetnet::BsKind::Small;
    bs.p_max = k == 0 ? 40.0 : 1.0;
    bs.varrho = k == 0 ? 4.0 : 2.0;
    bs.xi = xi;
    bs.static_power = k == 0 ? 10.0 : 0.1;
    inst.static_power += bs.static_power;
    inst.stations.push_back(bs);
  }
  for (std::size_t n = 0; n < N; ++n) inst.users.push_back(hetnet::UserEquipment{n, {}});
  inst.gains.resize(static_cast<long>(N), static_cast<long>(K));
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      inst.gains(static_cast<long>(n), static_cast<long>(k)) = std::pow(10.0, exponent(rng));
    }
  }
  inst.noise_power = 3.9810717055349693e-14;
  inst.bandwidth = 10e6;
  return inst;
}

}  // namespace oracle

#endif  // HETNET_TESTS_ORACLES_HPP
