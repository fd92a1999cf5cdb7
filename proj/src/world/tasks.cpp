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

#include "lw/world/tasks.hpp"

#include <algorithm>

#include "lw/common/error.hpp"
#include "lw/world/constants.hpp"

namespace lw::world {
namespace {

Range3 box(Vec3 lo, Vec3 hi) { return {lo, hi}; }
Range3 point(Vec3 p) { return {p, p}; }

ObjectTemplate graspable(std::string name, Range3 init) {
  ObjectTemplate o;
  o.name = std::move(name);
  o.init = init;
  o.graspable = true;
  return o;
}

ObjectTemplate fixture(std::string name, Range3 init,
                       std::optional<std::string> relative_to = std::nullopt) {
  ObjectTemplate o;
  o.name = std::move(name);
  o.init = init;
  o.relative_to = std::move(relative_to);
  return o;
}

ObjectTemplate jointed(std::string name, Range3 base, Vec3 axis, double hi, double initial,
                       bool pushable = false) {
  ObjectTemplate o;
  o.name = std::move(name);
  o.init = base;
  o.joint = JointTemplate{axis, 0.0, hi, initial, pushable};
  return o;
}

ObjectTemplate anchored(std::string name, std::string target, Vec3 offset) {
  ObjectTemplate o;
  o.name = std::move(name);
  o.anchor = Anchor{std::move(target), offset};
  return o;
}

GoalTemplate goal_box(Vec3 lo, Vec3 hi) { return {box(lo, hi), std::nullopt}; }
GoalTemplate goal_at(std::string object, Vec3 offset) { return {point(offset), std::move(object)}; }

TaskSpec make(std::string name, std::string description, bool base,
              std::vector<ObjectTemplate> objects, GoalTemplate goal, PredicateKind kind,
              std::string predicate_object = {}) {
  TaskSpec t;
  t.name = std::move(name);
  t.description = std::move(description);
  t.base = base;
  t.objects = std::move(objects);
  t.goal = std::move(goal);
  t.success = {kind, std::move(predicate_object)};
  t.horizon = constants::kHorizon;
  return t;
}

std::vector<TaskSpec> build_registry() {
  using P = PredicateKind;
  const Vec3 ux = Vec3::UnitX(), uy = Vec3::UnitY(), uz = Vec3::UnitZ();
  const Range3 puck_front = box({-0.1, 0.55, 0.0}, {0.1, 0.65, 0.0});
  std::vector<TaskSpec> tasks;

  // BASE10
  tasks.push_back(make("reach", "reach the goal position with the gripper", true, {},
                       goal_box({-0.3, 0.6, 0.05}, {0.3, 0.9, 0.3}), P::kGripperAtGoal));
  tasks.push_back(make("push", "push the puck to the goal", true,
                       {graspable("puck", puck_front)},
                       goal_box({-0.3, 0.75, 0.0}, {0.3, 0.9, 0.0}), P::kObjectAtGoal, "puck"));
  tasks.push_back(make("pick-place", "pick up the puck and place it at the goal", true,
                       {graspable("puck", puck_front)},
                       goal_box({-0.3, 0.75, 0.05}, {0.3, 0.9, 0.3}), P::kObjectAtGoal, "puck"));
  tasks.push_back(make("drawer-open", "pull the drawer open", true,
                       {jointed("drawer handle", box({-0.1, 0.8, 0.08}, {0.1, 0.9, 0.08}), -uy,
                                0.15, 0.0),
                        anchored("drawer", "drawer handle", {0.0, 0.02, 0.0})},
                       goal_at("drawer handle", {0.0, -0.15, 0.0}), P::kJointOpen,
                       "drawer handle"));
  tasks.push_back(make("drawer-close", "push the drawer closed", true,
                       {jointed("drawer handle", box({-0.1, 0.8, 0.08}, {0.1, 0.9, 0.08}), -uy,
                                0.15, 0.15),
                        anchored("drawer", "drawer handle", {0.0, 0.02, 0.0})},
                       goal_at("drawer handle", {0.0, 0.15, 0.0}), P::kJointClosed,
                       "drawer handle"));
  tasks.push_back(make("button-press", "press the button from the front", true,
                       {jointed("button", box({-0.2, 0.85, 0.1}, {0.2, 0.9, 0.15}), -uy, 0.04,
                                0.04, true)},
                       goal_at("button", {0.0, 0.04, 0.0}), P::kJointClosed, "button"));
  tasks.push_back(make("door-open", "pull the door open", true,
                       {jointed("door handle", box({0.0, 0.7, 0.1}, {0.2, 0.8, 0.15}), -ux, 0.2,
                                0.0)},
                       goal_at("door handle", {-0.2, 0.0, 0.0}), P::kJointOpen, "door handle"));
  tasks.push_back(make("window-open", "slide the window open to the right", true,
                       {jointed("window handle", box({-0.2, 0.75, 0.15}, {0.0, 0.85, 0.2}), ux,
                                0.2, 0.0)},
                       goal_at("window handle", {0.2, 0.0, 0.0}), P::kJointOpen,
                       "window handle"));
  tasks.push_back(make("window-close", "slide the window closed to the left", true,
                       {jointed("window handle", box({-0.2, 0.75, 0.15}, {0.0, 0.85, 0.2}), ux,
                                0.2, 0.2)},
                       goal_at("window handle", {-0.2, 0.0, 0.0}), P::kJointClosed,
                       "window handle"));
  tasks.push_back(make("peg-insert", "insert the peg into the hole", true,
                       {graspable("peg", box({-0.1, 0.5, 0.0}, {0.1, 0.6, 0.0})),
                        fixture("hole", box({-0.35, 0.6, 0.05}, {-0.25, 0.7, 0.15}))},
                       goal_at("hole", Vec3::Zero()), P::kObjectAtGoal, "peg"));

  // Held out of BASE10.
  tasks.push_back(make("coffee-button", "push the button on the coffee machine", false,
                       {jointed("button", box({-0.1, 0.8, 0.2}, {0.1, 0.85, 0.25}), -uy, 0.04,
                                0.04, true),
                        fixture("coffee machine", point({0.0, 0.1, -0.12}), "button")},
                       goal_at("button", {0.0, 0.04, 0.0}), P::kJointClosed, "button"));
  tasks.push_back(make("button-press-topdown", "press the button down from above", false,
                       {jointed("button", box({-0.1, 0.65, 0.03}, {0.1, 0.8, 0.06}), uz, 0.04,
                                0.04, true)},
                       goal_at("button", {0.0, 0.0, -0.04}), P::kJointClosed, "button"));
  tasks.push_back(make("door-close", "push the door closed", false,
                       {jointed("door handle", box({0.0, 0.7, 0.1}, {0.2, 0.8, 0.15}), -ux, 0.2,
                                0.2)},
                       goal_at("door handle", {0.2, 0.0, 0.0}), P::kJointClosed, "door handle"));
  tasks.push_back(make("shelf-place", "pick up the puck and place it on the shelf", false,
                       {graspable("puck", puck_front),
                        fixture("shelf", box({-0.15, 0.8, 0.15}, {0.15, 0.85, 0.2}))},
                       goal_at("shelf", {0.0, 0.0, 0.03}), P::kObjectAtGoal, "puck"));
  tasks.push_back(make("push-back", "push the puck backward to the goal", false,
                       {graspable("puck", box({-0.1, 0.75, 0.0}, {0.1, 0.85, 0.0}))},
                       goal_box({-0.2, 0.5, 0.0}, {0.2, 0.6, 0.0}), P::kObjectAtGoal, "puck"));
  tasks.push_back(make("reach-wall", "reach the goal behind the wall with the gripper", false, {},
                       goal_box({-0.3, 0.8, 0.05}, {0.3, 0.9, 0.3}), P::kGripperAtGoal));
  tasks.push_back(make("pick-place-wall", "pick up the puck and place it at the goal over the wall",
                       false, {graspable("puck", box({-0.1, 0.55, 0.0}, {0.1, 0.6, 0.0}))},
                       goal_box({-0.3, 0.85, 0.15}, {0.3, 0.9, 0.3}), P::kObjectAtGoal, "puck"));
  tasks.push_back(make("faucet-open", "turn the faucet open to the right", false,
                       {jointed("faucet handle", box({-0.15, 0.75, 0.1}, {0.05, 0.85, 0.14}), ux,
                                0.15, 0.0)},
                       goal_at("faucet handle", {0.15, 0.0, 0.0}), P::kJointOpen,
                       "faucet handle"));
  tasks.push_back(make("faucet-close", "turn the faucet closed to the left", false,
                       {jointed("faucet handle", box({-0.2, 0.75, 0.1}, {0.0, 0.85, 0.14}), ux,
                                0.15, 0.15)},
                       goal_at("faucet handle", {-0.15, 0.0, 0.0}), P::kJointClosed,
                       "faucet handle"));
  tasks.push_back(make("handle-press", "press the handle down", false,
                       {jointed("handle", box({-0.1, 0.7, 0.03}, {0.1, 0.8, 0.05}), uz, 0.1, 0.1,
                                true)},
                       goal_at("handle", {0.0, 0.0, -0.1}), P::kJointClosed, "handle"));
  return tasks;
}

}  // namespace

std::string SuccessPredicate::id() const {
  switch (kind) {
    case PredicateKind::kGripperAtGoal: return "gripper_at_goal";
    case PredicateKind::kObjectAtGoal: return "object_at_goal:" + object;
    case PredicateKind::kJointOpen: return "joint_open:" + object;
    case PredicateKind::kJointClosed: return "joint_closed:" + object;
  }
  return {};
}

bool SuccessPredicate::holds(const WorldState& state) const {
  if (kind == PredicateKind::kGripperAtGoal) {
    return (state.gripper_pos - state.goal_pos).norm() < constants::kSuccessRadius;
  }
  const ObjectState* obj = state.find(object);
  if (obj == nullptr) return false;
  switch (kind) {
    case PredicateKind::kObjectAtGoal:
      return (obj->position - state.goal_pos).norm() < constants::kSuccessRadius;
    case PredicateKind::kJointOpen:
      return obj->joint &&
             obj->joint->value >=
                 obj->joint->lo + constants::kJointOpenFraction * (obj->joint->hi - obj->joint->lo);
    case PredicateKind::kJointClosed:
      return obj->joint &&
             obj->joint->value <=
                 obj->joint->lo + constants::kJointClosedFraction * (obj->joint->hi - obj->joint->lo);
    default: return false;
  }
}

std::vector<std::string> TaskSpec::object_names() const {
  std::vector<std::string> names;
  names.reserve(objects.size());
  for (const auto& o : objects) names.push_back(o.name);
  return names;
}

const std::vector<TaskSpec>& all_tasks() {
  static const std::vector<TaskSpec> registry = build_registry();
  return registry;
}

std::vector<TaskSpec> list_tasks(TaskSet set) {
  std::vector<TaskSpec> out;
  for (const auto& t : all_tasks()) {
    if (set == TaskSet::kFull20 || t.base) out.push_back(t);
  }
  return out;
}

std::vector<std::string> task_names(TaskSet set) {
  std::vector<std::string> out;
  for (const auto& t : list_tasks(set)) out.push_back(t.name);
  return out;
}

const TaskSpec& find_task(const std::string& name) {
  const auto& tasks = all_tasks();
  auto it = std::find_if(tasks.begin(), tasks.end(),
                         [&](const TaskSpec& t) { return t.name == name; });
  if (it == tasks.end()) throw NotFound("unknown task '" + name + "'");
  return *it;
}

TaskSet parse_task_set(const std::string& text) {
  if (text == "base" || text == "base10" || text == "BASE10") return TaskSet::kBase10;
  if (text == "full" || text == "full20" || text == "FULL20") return TaskSet::kFull20;
  throw InvalidArgument("unknown task set '" + text + "' (expected base or full)");
}

}  // namespace lw::world
