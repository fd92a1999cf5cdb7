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

#include <optional>
#include <string>
#include <vector>

#include "lw/world/types.hpp"

namespace lw::world {

// Axis-aligned box for uniform draws; lo == hi pins a coordinate.
struct Range3 {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();
};

struct JointTemplate {
  Vec3 axis = Vec3::UnitX();
  double lo = 0.0;
  double hi = 0.0;
  double initial = 0.0;
  bool pushable = false;
};

struct ObjectTemplate {
  std::string name;
  // Absolute placement, or an offset from `relative_to`'s sampled position.
  Range3 init;
  std::optional<std::string> relative_to;
  std::optional<JointTemplate> joint;
  std::optional<Anchor> anchor;
  bool graspable = false;
};

struct GoalTemplate {
  Range3 range;
  std::optional<std::string> relative_to;
};

enum class PredicateKind { kGripperAtGoal, kObjectAtGoal, kJointOpen, kJointClosed };

struct SuccessPredicate {
  PredicateKind kind = PredicateKind::kGripperAtGoal;
  std::string object;

  // Stable identifier such as "object_at_goal:puck".
  std::string id() const;
  bool holds(const WorldState& state) const;
};

enum class TaskSet { kBase10, kFull20 };

struct TaskSpec {
  std::string name;
  std::string description;
  std::vector<ObjectTemplate> objects;
  GoalTemplate goal;
  SuccessPredicate success;
  int horizon = 500;
  bool base = false;  // member of BASE10 (every task is in FULL20)

  std::vector<std::string> object_names() const;
};

// Fixed registry; BASE10 first, in stable order.
const std::vector<TaskSpec>& all_tasks();
std::vector<TaskSpec> list_tasks(TaskSet set);
std::vector<std::string> task_names(TaskSet set);
// Throws NotFound for unknown names.
const TaskSpec& find_task(const std::string& name);
TaskSet parse_task_set(const std::string& text);

}  // namespace lw::world
