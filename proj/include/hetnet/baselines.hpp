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

#ifndef HETNET_BASELINES_HPP
#define HETNET_BASELINES_HPP

#include <array>
#include <string>
#include <string_view>

#include "hetnet/dinkelbach.hpp"

namespace hetnet {

/// Schemes compared in the experiments. The string names are used verbatim
/// in CSV headers and JSON records.
enum class SchemeId { UAPCEE, JUAPCMSE, UAPCEEwB, RE, MaxGain };

inline constexpr std::array<SchemeId, 5> kAllSchemes = {
    SchemeId::UAPCEE, SchemeId::JUAPCMSE, SchemeId::UAPCEEwB, SchemeId::RE, SchemeId::MaxGain};

std::string_view to_string(SchemeId id);
SchemeId scheme_from_string(std::string_view name);

struct RangeExpansionBias {
  double macro_db = 0.0;
  double small_db = 10.0;

  bool operator==(const RangeExpansionBias&) const = default;
};

/// Association by strongest biased received power g_nk p_max_k 10^(bias/10).
Association range_expansion_association(const NetworkInstance& inst,
                                        const RangeExpansionBias& bias);

/// Association by strongest channel gain.
Association max_gain_association(const NetworkInstance& inst);

/// Range expansion association, then energy-efficient power control.
Solution solve_range_expansion(const NetworkInstance& inst, const SolverConfig& cfg,
                               const RangeExpansionBias& bias = {});

/// Max-gain association, then energy-efficient power control.
Solution solve_max_gain(const NetworkInstance& inst, const SolverConfig& cfg);

/// Optimizes with the backhaul term removed (xi = 0) and reports metrics
/// measured on the real instance. `q_star` keeps the optimizer's own value.
Solution solve_no_backhaul_objective(const NetworkInstance& inst, const SolverConfig& cfg);

/// Alternating association / power control at q = 0 (sum effective rate),
/// repeated until the association stops changing.
Solution solve_sum_rate(const NetworkInstance& inst, const SolverConfig& cfg);

Solution run_scheme(SchemeId id, const NetworkInstance& inst, const SolverConfig& cfg,
                    const RangeExpansionBias& bias = {});

}  // namespace hetnet

#endif  // HETNET_BASELINES_HPP
