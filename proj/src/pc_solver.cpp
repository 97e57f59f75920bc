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

#include "hetnet/pc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace hetnet {

namespace {

using Eigen::Index;

Index ix(std::size_t i) { return static_cast<Index>(i); }

// Mbps per nat of spectral efficiency.
double nat_to_mbps(const NetworkInstance& inst) {
  return inst.bandwidth / 1e6 / std::numbers::ln2;
}

std::vector<double> station_weights(const Association& assoc, double q,
                                    const NetworkInstance& inst) {
  std::vector<double> w(inst.num_stations(), 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (assoc.load(k) > 0) {
      w[k] = (1.0 - q * inst.stations[k].xi) / static_cast<double>(assoc.load(k));
    }
  }
  return w;
}

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  void project(std::vector<double>& x) const {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], lo[k], hi[k]);
  }
};

Box log_box(const NetworkInstance& inst, const PcConfig& cfg) {
  Box b;
  for (const auto& bs : inst.stations) {
    b.hi.push_back(std::log(bs.p_max));
    b.lo.push_back(std::log(bs.p_max * cfg.p_min_ratio));
  }
  return b;
}

// Surrogate value and (optionally) its gradient in one pass over the users.
double evaluate_surrogate(const std::vector<double>& rho, const ScaleCoeffs& coeffs,
                          const Association& assoc, const std::vector<double>& w,
                          double q, const NetworkInstance& inst,
                          std::vector<double>* grad) {
  const std::size_t K = inst.num_stations();
  const std::size_t N = inst.num_users();
  const double scale = nat_to_mbps(inst);

  std::vector<double> p(K);
  for (std::size_t k = 0; k < K; ++k) p[k] = std::exp(rho[k]);

  double value = 0.0;
  if (grad) grad->assign(K, 0.0);

  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t k = assoc.serving(n);
    if (w[k] == 0.0) continue;
    const auto row = inst.gains.row(ix(n));
    double denom = inst.noise_power;
    for (std::size_t j = 0; j < K; ++j) {
      if (j != k) denom += row(ix(j)) * p[j];
    }
    const double a = coeffs.alpha(ix(n), ix(k));
    const double b = coeffs.beta(ix(n), ix(k));
    const double log_sinr = std::log(row(ix(k))) + rho[k] - std::log(denom);
    const double wc = w[k] * scale;
    value += wc * (a * log_sinr + b);
    if (grad) {
      (*grad)[k] += wc * a;
      const double f = wc * a / denom;
      for (std::size_t j = 0; j < K; ++j) {
        if (j != k) (*grad)[j] -= f * row(ix(j)) * p[j];
      }
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    value -= q * inst.stations[k].varrho * p[k];
    if (grad) (*grad)[k] -= q * inst.stations[k].varrho * p[k];
  }
  return value;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

void PcConfig::validate() const {
  if (!(p_min_ratio > 0.0 && p_min_ratio < 1.0)) {
    throw std::invalid_argument("pc.p_min_ratio must lie in (0, 1)");
  }
  if (max_rounds < 1) throw std::invalid_argument("pc.max_rounds must be >= 1");
  if (max_inner < 1) throw std::invalid_argument("pc.max_inner must be >= 1");
  if (!(tol_outer > 0.0)) throw std::invalid_argument("pc.tol_outer must be > 0");
  if (!(tol_inner > 0.0)) throw std::invalid_argument("pc.tol_inner must be > 0");
  if (!(armijo > 0.0 && armijo < 1.0)) throw std::invalid_argument("pc.armijo must lie in (0, 1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) {
    throw std::invalid_argument("pc.backtrack must lie in (0, 1)");
  }
}

LogPower LogPower::from_power(std::span<const double> watts) {
  LogPower lp;
  lp.rho.reserve(watts.size());
  for (double p : watts) lp.rho.push_back(std::log(p));
  return lp;
}

std::vector<double> LogPower::to_power() const {
  std::vector<double> p(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) p[k] = std::exp(rho[k]);
  return p;
}

std::pair<double, double> scale_coeffs(double z_anchor) {
  if (!(z_anchor > 0.0)) {
    throw std::invalid_argument(
        fmt::format("scale_coeffs: anchor must be positive, got {}", z_anchor));
  }
  const double alpha = z_anchor / (1.0 + z_anchor);
  const double beta = std::log1p(z_anchor) - alpha * std::log(z_anchor);
  return {alpha, beta};
}

ScaleCoeffs anchor_coeffs(std::span<const double> power, const NetworkInstance& inst) {
  const std::size_t N = inst.num_users();
  const std::size_t K = inst.num_stations();
  ScaleCoeffs c;
  c.alpha.resize(ix(N), ix(K));
  c.beta.resize(ix(N), ix(K));
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t k = 0; k < K; ++k) {
      const double z = std::max(sinr(n, k, power, inst), std::numeric_limits<double>::min());
      const auto [a, b] = scale_coeffs(z);
      c.alpha(ix(n), ix(k)) = a;
      c.beta(ix(n), ix(k)) = b;
    }
  }
  return c;
}

std::vector<double> power_floor(const NetworkInstance& inst, const PcConfig& cfg) {
  std::vector<double> lo(inst.num_stations());
  for (std::size_t k = 0; k < lo.size(); ++k) lo[k] = inst.stations[k].p_max * cfg.p_min_ratio;
  return lo;
}

double pc_objective(const Association& assoc, std::span<const double> power, double q,
                    const NetworkInstance& inst) {
  const auto w = station_weights(assoc, q, inst);
  double value = 0.0;
  for (std::size_t n = 0; n < assoc.num_users(); ++n) {
    const std::size_t k = assoc.serving(n);
    value += w[k] * link_rate(n, k, power, inst);
  }
  for (std::size_t k = 0; k < inst.num_stations(); ++k) {
    value -= q * inst.stations[k].varrho * power[k];
  }
  return value;
}

double surrogate_objective(const LogPower& rho, const ScaleCoeffs& coeffs,
                           const Association& assoc, double q, const NetworkInstance& inst) {
  return evaluate_surrogate(rho.rho, coeffs, assoc, station_weights(assoc, q, inst), q, inst,
                            nullptr);
}

std::vector<double> surrogate_gradient(const LogPower& rho, const ScaleCoeffs& coeffs,
                                       const Association& assoc, double q,
                                       const NetworkInstance& inst) {
  std::vector<double> g;
  evaluate_surrogate(rho.rho, coeffs, assoc, station_weights(assoc, q, inst), q, inst, &g);
  return g;
}

InnerResult solve_inner(const ScaleCoeffs& coeffs, const Association& assoc, double q,
                        const NetworkInstance& inst, const PcConfig& cfg,
                        const LogPower& start) {
  const Box box = log_box(inst, cfg);
  const auto w = station_weights(assoc, q, inst);
  const std::size_t K = inst.num_stations();

  std::vector<double> x = start.rho;
  box.project(x);
  std::vector<double> g;
  double f = evaluate_surrogate(x, coeffs, assoc, w, q, inst, &g);

  InnerResult res;
  double g_inf = 0.0;
  for (double v : g) g_inf = std::max(g_inf, std::abs(v));
  // First trial moves each log-power by at most one neper.
  double step = 1.0 / std::max(1.0, g_inf);

  std::vector<double> trial(K);
  std::vector<double> g_trial;
  for (;;) {
    // Projected gradient with unit step as the stationarity measure.
    double pg_norm2 = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double d = std::clamp(x[k] + g[k], box.lo[k], box.hi[k]) - x[k];
      pg_norm2 += d * d;
    }
    if (std::sqrt(pg_norm2) <= cfg.tol_inner) {
      res.converged = true;
      break;
    }
    if (res.iterations >= cfg.max_inner) break;

    bool accepted = false;
    double s = step;
    double f_trial = f;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t k = 0; k < K; ++k) trial[k] = x[k] + s * g[k];
      box.project(trial);
      double slope = 0.0;
      for (std::size_t k = 0; k < K; ++k) slope += g[k] * (trial[k] - x[k]);
      if (slope <= 0.0) break;
      f_trial = evaluate_surrogate(trial, coeffs, assoc, w, q, inst, &g_trial);
      if (f_trial >= f + cfg.armijo * slope) {
        accepted = true;
        break;
      }
      s *= cfg.backtrack;
    }
    if (!accepted) break;  // no ascent left at working precision

    std::vector<double> sk(K);
    std::vector<double> yk(K);
    for (std::size_t k = 0; k < K; ++k) {
      sk[k] = trial[k] - x[k];
      yk[k] = g_trial[k] - g[k];
    }
    const double sy = dot(sk, yk);
    // Ascent on a concave function: curvature shows up as s.y < 0.
    step = sy < 0.0 ? std::clamp(dot(sk, sk) / -sy, 1e-10, 1e10) : std::min(2.0 * s, 1e10);

    x.swap(trial);
    g.swap(g_trial);
    f = f_trial;
    ++res.iterations;
  }
  res.rho.rho = std::move(x);
  res.value = f;
  return res;
}

namespace {

// SCALE rounds from `p` (with true objective `obj`) until the improvement
// drops below tolerance. Updates p, obj and the diagnostics in place.
void scale_rounds(const Association& assoc, double q, const NetworkInstance& inst,
                  const PcConfig& cfg, const std::vector<double>& lo, std::vector<double>& p,
                  double& obj, PcDiagnostics& diag) {
  diag.converged = false;
  for (std::size_t round = 0; round < cfg.max_rounds; ++round) {
    const ScaleCoeffs coeffs = anchor_coeffs(p, inst);
    const InnerResult inner =
        solve_inner(coeffs, assoc, q, inst, cfg, LogPower::from_power(p));
    ++diag.scale_rounds_T2;
    diag.inner_iters_L += inner.iterations;
    if (!inner.converged && inner.iterations >= cfg.max_inner) diag.inner_capped = true;

    std::vector<double> next = inner.rho.to_power();
    for (std::size_t k = 0; k < next.size(); ++k) {
      next[k] = std::clamp(next[k], lo[k], inst.stations[k].p_max);
    }
    const double next_obj = pc_objective(assoc, next, q, inst);
    if (next_obj < obj) {
      // Only possible with negative weights or at round-off level.
      diag.converged = true;
      return;
    }
    const double gain = next_obj - obj;
    p = std::move(next);
    obj = next_obj;
    diag.objective_trace.push_back(obj);
    if (gain <= cfg.tol_outer * std::max(1.0, std::abs(obj))) {
      diag.converged = true;
      return;
    }
  }
}

}  // namespace

PcResult solve_pc(const Association& assoc, double q, const PowerAllocation& p_init,
                  const NetworkInstance& inst, const PcConfig& cfg) {
  cfg.validate();
  if (p_init.watts.size() != inst.num_stations()) {
    throw std::invalid_argument("solve_pc: power vector has the wrong length");
  }
  const std::size_t K = inst.num_stations();
  const auto lo = power_floor(inst, cfg);
  std::vector<double> p = p_init.watts;
  for (std::size_t k = 0; k < K; ++k) p[k] = std::clamp(p[k], lo[k], inst.stations[k].p_max);

  PcResult out;
  auto& diag = out.diagnostics;
  double obj = pc_objective(assoc, p, q, inst);
  diag.objective_trace.push_back(obj);
  scale_rounds(assoc, q, inst, cfg, lo, p, obj, diag);

  if (cfg.screen_corners && K > 1) {
    std::vector<double> best_corner;
    double best_corner_obj = obj;
    for (std::size_t on = 0; on < K; ++on) {
      std::vector<double> corner = lo;
      corner[on] = inst.stations[on].p_max;
      const double v = pc_objective(assoc, corner, q, inst);
      if (v > best_corner_obj) {
        best_corner_obj = v;
        best_corner = std::move(corner);
      }
    }
    if (!best_corner.empty()) {
      p = std::move(best_corner);
      obj = best_corner_obj;
      diag.objective_trace.push_back(obj);
      scale_rounds(assoc, q, inst, cfg, lo, p, obj, diag);
    }
  }
  out.power.watts = std::move(p);
  return out;
}

}  // namespace hetnet
