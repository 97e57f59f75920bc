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

#ifndef HETNET_SERIALIZATION_HPP
#define HETNET_SERIALIZATION_HPP

#include <json.hpp>

#include "hetnet/baselines.hpp"
#include "hetnet/channel.hpp"
#include "hetnet/dinkelbach.hpp"
#include "hetnet/model.hpp"

namespace hetnet {

void to_json(nlohmann::json& j, const Point& p);
void from_json(const nlohmann::json& j, Point& p);

void to_json(nlohmann::json& j, const BaseStation& bs);
void from_json(const nlohmann::json& j, BaseStation& bs);

void to_json(nlohmann::json& j, const UserEquipment& ue);
void from_json(const nlohmann::json& j, UserEquipment& ue);

/// Scenario document: stations, users, the gain matrix (row per user) and
/// the scalar radio parameters. Doubles round-trip exactly.
void to_json(nlohmann::json& j, const NetworkInstance& inst);
void from_json(const nlohmann::json& j, NetworkInstance& inst);

void to_json(nlohmann::json& j, const MetricBreakdown& m);
void from_json(const nlohmann::json& j, MetricBreakdown& m);

void to_json(nlohmann::json& j, const SolverCounters& c);

/// Result record without the per-iteration detail: metrics, q trace,
/// counters, association vector and powers.
void to_json(nlohmann::json& j, const Solution& s);

}  // namespace hetnet

#endif  // HETNET_SERIALIZATION_HPP
