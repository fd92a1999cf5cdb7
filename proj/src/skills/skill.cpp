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

#include "lw/skills/skill.hpp"

#include <algorithm>

#include "lw/common/error.hpp"
#include "lw/query/edit_distance.hpp"
#include "lw/world/constants.hpp"

namespace lw::skills {
namespace {

using world::Vec3;

Skill make(std::string id, std::string description, std::string anchor, Vec3 offset,
           double grip) {
  return {std::move(id), std::move(description), std::move(anchor), offset, 1.0, grip};
}

std::vector<Skill> build_library() {
  const Vec3 zero = Vec3::Zero();
  const Vec3 above{0.0, 0.0, 0.06};
  constexpr double kOpen = -1.0, kClose = 1.0;
  return {
      make("open_gripper", "open the gripper", "gripper", zero, kOpen),
      make("close_gripper", "close the gripper", "gripper", zero, kClose),
      make("reach_goal", "move the gripper to the goal", "goal", zero, kOpen),
      make("above_puck", "move the gripper above the puck", "puck", above, kOpen),
      make("down_to_puck", "move the gripper down around the puck", "puck", zero, kOpen),
      make("slide_puck", "slide the puck to the goal", "goal", zero, kClose),
      make("move_puck", "move the puck to the goal", "goal", zero, kClose),
      make("above_drawer_handle", "move the gripper above the drawer handle", "drawer handle",
           above, kOpen),
      make("down_to_drawer_handle", "move the gripper down around the drawer handle",
           "drawer handle", zero, kOpen),
      make("pull_drawer_open", "pull the drawer open", "drawer handle", {0.0, -0.1, 0.0}, kClose),
      make("push_drawer_closed", "push the drawer closed", "drawer handle", {0.0, 0.1, 0.0},
           kClose),
      make("front_of_button", "move the gripper in front of the button", "button",
           {0.0, -0.06, 0.0}, kOpen),
      make("push_button", "push the button", "button", {0.0, 0.06, 0.0}, kClose),
      make("above_button", "move the gripper above the button", "button", above, kOpen),
      make("press_button_down", "press the button down", "button", {0.0, 0.0, -0.06}, kClose),
      make("above_door_handle", "move the gripper above the door handle", "door handle", above,
           kOpen),
      make("down_to_door_handle", "move the gripper down around the door handle", "door handle",
           zero, kOpen),
      make("pull_door_open", "pull the door open", "door handle", {-0.1, 0.0, 0.0}, kClose),
      make("push_door_closed", "push the door closed", "door handle", {0.1, 0.0, 0.0}, kClose),
      make("around_window_handle", "move the gripper around the window handle", "window handle",
           zero, kOpen),
      make("slide_window_open", "slide the window open", "window handle", {0.1, 0.0, 0.0},
           kClose),
      make("slide_window_closed", "slide the window closed", "window handle", {-0.1, 0.0, 0.0},
           kClose),
      make("above_peg", "move the gripper above the peg", "peg", above, kOpen),
      make("down_to_peg", "move the gripper down around the peg", "peg", zero, kOpen),
      make("insert_peg", "insert the peg into the hole", "hole", zero, kClose),
      make("around_faucet_handle", "move the gripper around the faucet handle", "faucet handle",
           zero, kOpen),
      make("turn_faucet_open", "turn the faucet open", "faucet handle", {0.1, 0.0, 0.0}, kClose),
      make("turn_faucet_closed", "turn the faucet closed", "faucet handle", {-0.1, 0.0, 0.0},
           kClose),
      make("above_handle", "move the gripper above the handle", "handle", above, kOpen),
      make("press_handle_down", "press the handle down", "handle", {0.0, 0.0, -0.06}, kClose),
  };
}

}  // namespace

Vec3 Skill::setpoint(const world::WorldState& state) const {
  if (anchor == "gripper") return state.gripper_pos + offset;
  if (anchor == "goal") return state.goal_pos + offset;
  const world::ObjectState* obj = state.find(anchor);
  // A grounded plan may name a skill for an object this scene lacks; it
  // then holds position and only drives the gripper fingers.
  if (obj == nullptr) return state.gripper_pos;
  return obj->position + offset;
}

const std::vector<Skill>& library() {
  static const std::vector<Skill> skills = build_library();
  return skills;
}

std::vector<std::string> library_descriptions() {
  std::vector<std::string> out;
  for (const auto& s : library()) out.push_back(s.description);
  return out;
}

const Skill& find_skill(const std::string& id) {
  for (const auto& s : library()) {
    if (s.id == id) return s;
  }
  throw NotFound("unknown skill '" + id + "'");
}

const Skill* find_by_description(const std::string& description) {
  for (const auto& s : library()) {
    if (s.description == description) return &s;
  }
  return nullptr;
}

world::Action skill_action(const Skill& skill, const world::WorldState& state) {
  const Vec3 error = skill.setpoint(state) - state.gripper_pos;
  const Vec3 move =
      (skill.gain * error / world::constants::kStepScale).cwiseMax(-1.0).cwiseMin(1.0);
  return {move, skill.grip};
}

const Skill& nearest_skill(const std::string& description) {
  static const std::vector<std::string> descriptions = library_descriptions();
  return library()[query::nearest(description, descriptions).index];
}

}  // namespace lw::skills
