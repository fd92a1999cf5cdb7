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

#include <cstdint>
#include <span>
#include <vector>

#include "lw/world/tasks.hpp"
#include "lw/world/types.hpp"

namespace lw::world {

// Samples the task's initial state. Pure in (task, seed).
WorldState reset(const TaskSpec& task, std::uint64_t seed);
WorldState reset(const std::string& task_name, std::uint64_t seed);

// One kinematic transition. Throws InvalidArgument past the horizon.
WorldState step(const WorldState& state, const Action& action);

Observation observe(const WorldState& state);

// Rebuilds the query-relevant part of a state (positions, closure, goal)
// from an observation. Joints and attachment are not recoverable.
WorldState scene_from_observation(const TaskSpec& task, const Observation& obs);

// True iff the task's predicate holds at any state of the trajectory.
bool episode_success(const TaskSpec& task, std::span<const WorldState> trajectory);

bool inside_workspace(const Vec3& p);

}  // namespace lw::world
