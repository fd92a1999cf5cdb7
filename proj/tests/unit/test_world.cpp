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


#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lw/skills/expert.hpp"
#include "lw/world/constants.hpp"
#include "lw/world/serialize.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/world.hpp"

using namespace lw;
using world::Action;
using world::Vec3;

TEST_CASE("base set names") {
  const auto names = world::task_names(world::TaskSet::kBase10);
  const std::set<std::string> want{"reach",       "push",         "pick-place", "drawer-open",
                                   "drawer-close", "button-press", "door-open",  "window-open",
                                   "window-close", "peg-insert"};
  CHECK(names.size() == 10);
  CHECK(std::set<std::string>(names.begin(), names.end()) == want);
}

TEST_CASE("full set contains the base set") {
  const auto full = world::task_names(world::TaskSet::kFull20);
  CHECK(full.size() == 20);
  CHECK(std::set<std::string>(full.begin(), full.end()).size() == 20);
  for (const auto& n : world::task_names(world::TaskSet::kBase10)) {
    CHECK(std::find(full.begin(), full.end(), n) != full.end());
  }
}

TEST_CASE("every held-out task shares a skill with some base task") {
  std::set<std::string> base_skills;
  for (const auto& n : world::task_names(world::TaskSet::kBase10)) {
    for (const auto& s : skills::expert_plan(n).steps) base_skills.insert(s.skill_id);
  }
  for (const auto& t : world::list_tasks(world::TaskSet::kFull20)) {
    if (t.base) continue;
    const auto& steps = skills::expert_plan(t.name).steps;
    const bool shared = std::any_of(steps.begin(), steps.end(),
                                    [&](const auto& s) { return base_skills.count(s.skill_id) > 0; });
    CHECK_MESSAGE(shared, t.name);
  }
}

TEST_CASE("reset is deterministic and seed dependent") {
  CHECK(world::reset("drawer-open", 7) == world::reset("drawer-open", 7));
  CHECK(world::reset("reach", 0).goal_pos != world::reset("reach", 1).goal_pos);
  for (const auto& t : world::all_tasks()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(world::reset(t, seed).gripper_closure == 0.0);
  }
}

TEST_CASE("zero action only advances the clock") {
  for (const auto& t : world::all_tasks()) {
    const auto s = world::reset(t, 3);
    const auto n = world::step(s, Action(0, 0, 0, -1));
    CHECK(n.gripper_pos == s.gripper_pos);
    CHECK(n.step_index == s.step_index + 1);
    REQUIRE(n.objects.size() == s.objects.size());
    for (std::size_t i = 0; i < s.objects.size(); ++i) CHECK(n.objects[i].position == s.objects[i].position);
  }
}

TEST_CASE("oversized commands are clamped before scaling") {
  const auto s = world::reset("reach", 0);
  const auto n = world::step(s, Action(2, 0, 0, 0));
  const Vec3 d = n.gripper_pos - s.gripper_pos;
  CHECK(d.x() == doctest::Approx(world::constants::kStepScale).epsilon(1e-12));
  CHECK(d.y() == 0.0);
  CHECK(d.z() == 0.0);
}

TEST_CASE("a closed gripper drags the drawer handle until its limit") {
  auto s = world::reset("drawer-close", 2);
  auto* handle = s.find("drawer handle");
  REQUIRE(handle != nullptr);
  REQUIRE(handle->joint);
  s.gripper_pos = handle->position;
  s.gripper_closure = 1.0;
  const Vec3 pull = -handle->joint->axis;
  double expected = handle->joint->value;
  for (int k = 0; k < 10; ++k) {
    s = world::step(s, Action(pull, 1.0));
    expected = std::max(handle->joint->lo, expected - world::constants::kStepScale);
    CHECK(s.find("drawer handle")->joint->value == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(s.find("drawer handle")->joint->value == handle->joint->lo);
  // The anchored drawer body follows.
  CHECK((s.find("drawer")->position - s.find("drawer handle")->position).isApprox(Vec3(0, 0.02, 0)));
}

TEST_CASE("observation layout") {
  auto s = world::reset("push", 1);
  REQUIRE(s.objects.size() == 1);
  s.step_index = 250;
  const auto o = world::observe(s);
  CHECK(o.segment<3>(0) == s.gripper_pos);
  CHECK(o.segment<3>(4) == s.objects[0].position);
  CHECK(o.segment<3>(7) == Vec3::Zero());
  CHECK(o.segment<3>(10) == s.goal_pos);
  CHECK(o[13] == 0.5);
  CHECK(world::observe(s) == o);
}

TEST_CASE("success is judged over the whole trajectory") {
  const auto& task = world::find_task("reach");
  std::vector<world::WorldState> traj(500, world::reset(task, 4));
  CHECK_FALSE(world::episode_success(task, traj));
  traj.back().gripper_pos = traj.back().goal_pos;
  CHECK(world::episode_success(task, traj));
  CHECK_FALSE(world::episode_success(task, std::vector<world::WorldState>{}));
}

TEST_CASE("the drawer-open expert succeeds") {
  const auto& task = world::find_task("drawer-open");
  const auto r = skills::run_expert(task, skills::expert_plan("drawer-open"), 0);
  CHECK(r.trajectory.size() == 501);
  CHECK(world::episode_success(task, r.trajectory));
}

TEST_CASE("state json round trip") {
  for (const auto& t : world::all_tasks()) {
    auto s = world::reset(t, 9);
    for (int k = 0; k < 5; ++k) s = world::step(s, Action(0.3, -0.7, 0.1, 0.9));
    const auto text = world::to_json(s).dump();
    CHECK(world::state_from_json(nlohmann::json::parse(text)) == s);
  }
}

TEST_CASE("scene reconstruction keeps every queried position") {
  for (const auto& t : world::all_tasks()) {
    const auto s = world::reset(t, 5);
    const auto scene = world::scene_from_observation(t, world::observe(s));
    CHECK(scene.gripper_pos == s.gripper_pos);
    CHECK(scene.goal_pos == s.goal_pos);
    for (const auto& o : s.objects) {
      const auto* r = scene.find(o.name);
      REQUIRE_MESSAGE(r != nullptr, std::string(t.name + "/" + o.name));
      CHECK(r->position.isApprox(o.position, 1e-12));
    }
  }
}
