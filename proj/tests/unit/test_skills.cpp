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

#include <filesystem>
#include <set>

#include "lw/query/edit_distance.hpp"
#include "lw/skills/demos.hpp"
#include "lw/skills/expert.hpp"
#include "lw/skills/skill.hpp"
#include "lw/world/constants.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/world.hpp"
#include "oracles.hpp"

using namespace lw;
namespace fs = std::filesystem;

namespace {
const skills::Skill& by_description(const std::string& d) {
  const auto* s = skills::find_by_description(d);
  REQUIRE_MESSAGE(s != nullptr, d);
  return *s;
}
}  // namespace

TEST_CASE("library") {
  const auto& lib = skills::library();
  CHECK(lib.size() == 30);
  const auto d = skills::library_descriptions();
  CHECK(std::set<std::string>(d.begin(), d.end()).size() == 30);
  CHECK(std::find(d.begin(), d.end(), "pull the drawer open") != d.end());
  std::set<std::string> ids;
  for (const auto& s : lib) ids.insert(s.id);
  CHECK(ids.size() == 30);
}

TEST_CASE("controller at and far from its setpoint") {
  const auto& skill = by_description("move the gripper above the puck");
  auto s = world::reset("push", 0);
  s.gripper_pos = skill.setpoint(s);
  const auto at = skills::skill_action(skill, s);
  CHECK(at.move == world::Vec3::Zero());
  s.gripper_pos.z() -= 0.3;
  CHECK(skills::skill_action(skill, s).move.z() == 1.0);
}

TEST_CASE("repeated application converges") {
  const auto& skill = by_description("move the gripper above the puck");
  auto s = world::reset("push", 1);
  s.gripper_pos = world::Vec3(0.3, 0.4, 0.3);
  double d = (skill.setpoint(s) - s.gripper_pos).norm();
  int steps = 0;
  while (d >= world::constants::kStepScale) {
    s = world::step(s, skills::skill_action(skill, s));
    const double next = (skill.setpoint(s) - s.gripper_pos).norm();
    REQUIRE(next < d);
    d = next;
    REQUIRE(++steps < 200);
  }
}

TEST_CASE("nearest skill") {
  for (const auto& s : skills::library()) CHECK(&skills::nearest_skill(s.description) == &s);
  const auto d = skills::library_descriptions();
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (oracle::levenshtein("pull drawer open", d[i]) < oracle::levenshtein("pull drawer open", d[best])) best = i;
  }
  CHECK(d[best] == "pull the drawer open");
  CHECK(skills::nearest_skill("pull drawer open").description == "pull the drawer open");
  CHECK(&skills::nearest_skill("pull drawer open") == &skills::nearest_skill("pull drawer open"));
}

TEST_CASE("drawer-open expert over 100 seeds") {
  const auto& task = world::find_task("drawer-open");
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ok += skills::run_expert(task, skills::expert_plan(task.name), seed).demo.success ? 1 : 0;
  }
  CHECK(ok >= 90);
}

TEST_CASE("every registry plan compiles and experts are deterministic") {
  for (const auto& task : world::all_tasks()) {
    CHECK_NOTHROW(skills::compile(skills::expert_plan(task.name), task));
    const auto a = skills::run_expert(task, skills::expert_plan(task.name), 11);
    const auto b = skills::run_expert(task, skills::expert_plan(task.name), 11);
    CHECK(a.demo.actions == b.demo.actions);
    CHECK(a.demo.observations == b.demo.observations);
  }
  CHECK_THROWS_AS(skills::expert_plan("no-such-task"), NotFound);
}

TEST_CASE("a missing anchor holds position") {
  const auto& skill = by_description("move the gripper above the puck");
  auto s = world::reset("reach", 0);
  CHECK(skill.setpoint(s) == s.gripper_pos);
}

TEST_CASE("base demonstration set") {
  const auto set = skills::generate_demos(world::task_names(world::TaskSet::kBase10), 100, 0);
  std::size_t n = 0;
  for (const auto& t : set.tasks) {
    CHECK(t.demos.size() == 100);
    for (const auto& d : t.demos) {
      CHECK(d.success);
      CHECK(d.actions.size() == d.observations.size());
    }
    n += t.demos.size();
  }
  CHECK(n == 1000);
}

TEST_CASE("single demonstration and disk round trip") {
  const auto one = skills::generate_demos({"door-open"}, 1, 42);
  REQUIRE(one.tasks.size() == 1);
  REQUIRE(one.tasks[0].demos.size() == 1);
  const auto again = skills::generate_demos({"door-open"}, 1, 42);
  CHECK(again.tasks[0].demos[0].actions == one.tasks[0].demos[0].actions);

  const auto set = skills::generate_demos({"push", "drawer-close"}, 3, 5);
  const fs::path dir = fs::temp_directory_path() / "lw_demo_roundtrip";
  fs::remove_all(dir);
  skills::write_demoset(set, dir.string());
  const auto back = skills::read_demoset(dir.string());
  CHECK(back.seed == set.seed);
  REQUIRE(back.tasks.size() == set.tasks.size());
  for (std::size_t i = 0; i < set.tasks.size(); ++i) {
    const auto& a = set.tasks[i];
    const auto& b = back.tasks[i];
    CHECK(a.task == b.task);
    CHECK(a.attempted_seeds == b.attempted_seeds);
    CHECK(a.attempted_success == b.attempted_success);
    REQUIRE(a.demos.size() == b.demos.size());
    for (std::size_t k = 0; k < a.demos.size(); ++k) {
      CHECK(a.demos[k].seed == b.demos[k].seed);
      CHECK(a.demos[k].observations == b.demos[k].observations);
      CHECK(a.demos[k].actions == b.demos[k].actions);
    }
  }
  fs::remove_all(dir);
  CHECK_THROWS_AS(skills::read_demoset(dir.string()), Error);
}
