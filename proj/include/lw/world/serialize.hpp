// Copyright 2026 The lw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "lw/world/tasks.hpp"
#include "lw/world/types.hpp"

namespace lw::world {

nlohmann::json to_json(const Vec3& v);
Vec3 vec3_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WorldState& state);
WorldState state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Action& action);
Action action_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Observation& obs);
Observation observation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TaskSpec& task);
// Registry document: {"tasks": [...]} in registry order.
nlohmann::json registry_json(TaskSet set);

// JSON-lines trajectory: one record per step with the state before the
// action, its observation and the action. The final state gets a record
// with a null action.
void write_trajectory_jsonl(std::ostream& out, std::span<const WorldState> states,
                            std::span<const Action> actions);

}  // namespace lw::world
