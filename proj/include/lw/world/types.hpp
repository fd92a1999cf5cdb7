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

#include <Eigen/Core>

namespace lw::world {

using Vec3 = Eigen::Vector3d;

// Observation layout: gripper (0..2), closure (3), first task object (4..6),
// second task object (7..9), goal (10..12), step fraction (13).
inline constexpr int kObservationDim = 14;
inline constexpr int kMaxTaskObjects = 2;
using Observation = Eigen::Matrix<double, kObservationDim, 1>;

// Prismatic joint; the owning object sits at base + axis * value.
struct JointState {
  Vec3 base = Vec3::Zero();
  Vec3 axis = Vec3::UnitX();
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  // Pushable joints (buttons) advance when the gripper presses into them
  // along -axis; others move only when dragged by a closed gripper.
  bool pushable = false;

  Vec3 position() const { return base + axis * value; }
};

// An object whose position is kept at another object's position + offset.
struct Anchor {
  std::string target;
  Vec3 offset = Vec3::Zero();
};

struct ObjectState {
  std::string name;
  Vec3 position = Vec3::Zero();
  std::optional<JointState> joint;
  std::optional<Anchor> anchor;
  bool graspable = false;
};

struct WorldState {
  Vec3 gripper_pos = Vec3::Zero();
  double gripper_closure = 0.0;
  std::optional<std::string> attached;
  std::vector<ObjectState> objects;
  Vec3 goal_pos = Vec3::Zero();
  int step_index = 0;

  const ObjectState* find(const std::string& name) const;
  ObjectState* find(const std::string& name);
};

bool operator==(const JointState& a, const JointState& b);
bool operator==(const Anchor& a, const Anchor& b);
bool operator==(const ObjectState& a, const ObjectState& b);
// Exact (bitwise-value) equality of every field.
bool operator==(const WorldState& a, const WorldState& b);

struct Action {
  Vec3 move = Vec3::Zero();
  double grip = 0.0;

  Action() = default;
  Action(double dx, double dy, double dz, double g) : move(dx, dy, dz), grip(g) {}
  Action(const Vec3& m, double g) : move(m), grip(g) {}

  Eigen::Vector4d vector() const { return {move.x(), move.y(), move.z(), grip}; }
  static Action from_vector(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
  // Every component clamped to [-1, 1].
  Action clamped() const;

  friend bool operator==(const Action& a, const Action& b) {
    return a.move == b.move && a.grip == b.grip;
  }
};

}  // namespace lw::world
