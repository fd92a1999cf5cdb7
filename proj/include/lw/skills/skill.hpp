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

#include <string>
#include <vector>

#include "lw/world/types.hpp"

namespace lw::skills {

// Stateless proportional controller toward an object-relative setpoint.
struct Skill {
  std::string id;
  std::string description;
  // "gripper" (hold position), "goal", or a task object name.
  std::string anchor;
  world::Vec3 offset = world::Vec3::Zero();
  double gain = 1.0;
  double grip = -1.0;

  // The gripper position itself when the anchor object is absent.
  world::Vec3 setpoint(const world::WorldState& state) const;
};

inline constexpr std::size_t kLibrarySize = 30;

const std::vector<Skill>& library();
std::vector<std::string> library_descriptions();
// Throws NotFound.
const Skill& find_skill(const std::string& id);
const Skill* find_by_description(const std::string& description);

// xyz = clamp(gain * (setpoint - gripper) / step_scale), grip = skill.grip.
world::Action skill_action(const Skill& skill, const world::WorldState& state);

// Library skill whose description is nearest by edit distance; registry
// order breaks ties.
const Skill& nearest_skill(const std::string& description);

}  // namespace lw::skills
