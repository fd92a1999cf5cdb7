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

#include "lw/world/world.hpp"

#include <algorithm>
#include <cmath>

#include "lw/common/error.hpp"
#include "lw/common/hash.hpp"
#include "lw/common/rng.hpp"
#include "lw/world/constants.hpp"

namespace lw::world {
namespace {

namespace c = constants;

Vec3 draw(CounterRng& rng, const Range3& r) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = rng.uniform(r.lo[i], r.hi[i]);
  return out;
}

void resolve_anchors(WorldState& state) {
  for (auto& obj : state.objects) {
    if (!obj.anchor) continue;
    const ObjectState* target = state.find(obj.anchor->target);
    if (target != nullptr) obj.position = target->position + obj.anchor->offset;
  }
}

}  // namespace

const ObjectState* WorldState::find(const std::string& name) const {
  for (const auto& o : objects) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

ObjectState* WorldState::find(const std::string& name) {
  for (auto& o : objects) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

bool operator==(const JointState& a, const JointState& b) {
  return a.base == b.base && a.axis == b.axis && a.value == b.value && a.lo == b.lo &&
         a.hi == b.hi && a.pushable == b.pushable;
}

bool operator==(const Anchor& a, const Anchor& b) {
  return a.target == b.target && a.offset == b.offset;
}

bool operator==(const ObjectState& a, const ObjectState& b) {
  return a.name == b.name && a.position == b.position && a.joint == b.joint &&
         a.anchor == b.anchor && a.graspable == b.graspable;
}

bool operator==(const WorldState& a, const WorldState& b) {
  return a.gripper_pos == b.gripper_pos && a.gripper_closure == b.gripper_closure &&
         a.attached == b.attached && a.objects == b.objects && a.goal_pos == b.goal_pos &&
         a.step_index == b.step_index;
}

Action Action::clamped() const {
  return {move.cwiseMax(-1.0).cwiseMin(1.0), std::clamp(grip, -1.0, 1.0)};
}

bool inside_workspace(const Vec3& p) {
  return (p.array() >= c::kWorkspaceLo.array()).all() &&
         (p.array() <= c::kWorkspaceHi.array()).all();
}

WorldState reset(const TaskSpec& task, std::uint64_t seed) {
  CounterRng rng(seed, fnv1a64(task.name));
  WorldState s;
  s.gripper_pos = draw(rng, {c::kGripperStartLo, c::kGripperStartHi});
  s.gripper_closure = 0.0;
  s.step_index = 0;
  for (const auto& tmpl : task.objects) {
    ObjectState obj;
    obj.name = tmpl.name;
    obj.graspable = tmpl.graspable;
    obj.anchor = tmpl.anchor;
    Vec3 p = draw(rng, tmpl.init);
    if (tmpl.relative_to) {
      const ObjectState* ref = s.find(*tmpl.relative_to);
      if (ref == nullptr) throw InvalidArgument("bad relative_to in task " + task.name);
      p += ref->position;
    }
    if (tmpl.joint) {
      JointState j;
      j.base = p;
      j.axis = tmpl.joint->axis;
      j.lo = tmpl.joint->lo;
      j.hi = tmpl.joint->hi;
      j.value = tmpl.joint->initial;
      j.pushable = tmpl.joint->pushable;
      obj.position = j.position();
      obj.joint = j;
    } else {
      obj.position = p;
    }
    s.objects.push_back(std::move(obj));
  }
  resolve_anchors(s);
  s.goal_pos = draw(rng, task.goal.range);
  if (task.goal.relative_to) {
    const ObjectState* ref = s.find(*task.goal.relative_to);
    if (ref == nullptr) throw InvalidArgument("bad goal anchor in task " + task.name);
    s.goal_pos += ref->position;
  }
  return s;
}

WorldState reset(const std::string& task_name, std::uint64_t seed) {
  return reset(find_task(task_name), seed);
}

WorldState step(const WorldState& state, const Action& action) {
  if (state.step_index >= c::kHorizon) {
    throw InvalidArgument("step beyond horizon (" + std::to_string(c::kHorizon) + ")");
  }
  const Action a = action.clamped();
  WorldState next = state;

  const double target_closure = (a.grip + 1.0) / 2.0;
  next.gripper_closure += std::clamp(target_closure - state.gripper_closure, -c::kClosureRate,
                                     c::kClosureRate);
  next.gripper_closure = std::clamp(next.gripper_closure, 0.0, 1.0);

  // Grasping is decided where the gripper closed, before it moves.
  if (next.attached && next.gripper_closure < c::kDetachClosure) {
    next.attached.reset();
  }
  if (!next.attached && next.gripper_closure > c::kAttachClosure) {
    double best = c::kGraspRadius;
    for (const auto& obj : next.objects) {
      if (!obj.graspable) continue;
      const double d = (obj.position - state.gripper_pos).norm();
      if (d < best) {
        best = d;
        next.attached = obj.name;
      }
    }
  }
  next.gripper_pos = (state.gripper_pos + a.move * c::kStepScale)
                         .cwiseMax(c::kWorkspaceLo)
                         .cwiseMin(c::kWorkspaceHi);
  const Vec3 delta = next.gripper_pos - state.gripper_pos;

  for (auto& obj : next.objects) {
    if (!obj.joint) continue;
    JointState& j = *obj.joint;
    if (j.pushable) {
      const Vec3 rel = next.gripper_pos - j.base;
      const double along = rel.dot(j.axis);
      const double lateral = (rel - j.axis * along).norm();
      if (lateral < c::kPushRadius && along < j.value && along > j.lo - c::kPushRadius) {
        j.value = std::max(j.lo, along);
      }
    } else if (next.gripper_closure >= c::kDragClosure &&
               (obj.position - state.gripper_pos).norm() < c::kGraspRadius) {
      j.value = std::clamp(j.value + delta.dot(j.axis), j.lo, j.hi);
    }
    obj.position = j.position();
  }

  if (next.attached) {
    next.find(*next.attached)->position = next.gripper_pos + c::kGraspOffset;
  }
  resolve_anchors(next);
  next.step_index += 1;
  return next;
}

Observation observe(const WorldState& state) {
  Observation obs = Observation::Zero();
  obs.segment<3>(0) = state.gripper_pos;
  obs[3] = state.gripper_closure;
  const int n = std::min<int>(kMaxTaskObjects, static_cast<int>(state.objects.size()));
  for (int i = 0; i < n; ++i) obs.segment<3>(4 + 3 * i) = state.objects[static_cast<std::size_t>(i)].position;
  obs.segment<3>(10) = state.goal_pos;
  obs[13] = static_cast<double>(state.step_index) / c::kHorizon;
  return obs;
}

WorldState scene_from_observation(const TaskSpec& task, const Observation& obs) {
  WorldState s;
  s.gripper_pos = obs.segment<3>(0);
  s.gripper_closure = obs[3];
  const int n = std::min<int>(kMaxTaskObjects, static_cast<int>(task.objects.size()));
  for (int i = 0; i < n; ++i) {
    ObjectState o;
    o.name = task.objects[static_cast<std::size_t>(i)].name;
    o.position = obs.segment<3>(4 + 3 * i);
    o.graspable = task.objects[static_cast<std::size_t>(i)].graspable;
    s.objects.push_back(std::move(o));
  }
  s.goal_pos = obs.segment<3>(10);
  s.step_index = static_cast<int>(std::lround(obs[13] * c::kHorizon));
  return s;
}

bool episode_success(const TaskSpec& task, std::span<const WorldState> trajectory) {
  if (trajectory.size() > static_cast<std::size_t>(c::kHorizon) + 1) {
    throw InvalidArgument("trajectory longer than horizon + 1");
  }
  return std::any_of(trajectory.begin(), trajectory.end(),
                     [&](const WorldState& s) { return task.success.holds(s); });
}

}  // namespace lw::world
