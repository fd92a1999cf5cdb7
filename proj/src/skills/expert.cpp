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

#include "lw/skills/expert.hpp"

#include <map>

#include "lw/world/constants.hpp"
#include "lw/world/world.hpp"

namespace lw::skills {
namespace {

using Steps = std::vector<ExpertStep>;

// Approach from above, descend, close, then run `finish`.
Steps grasp_plan(const std::string& object, const std::string& around_object,
                 const std::string& above_id, const std::string& down_id,
                 const std::string& finish_id) {
  return {
      {"the gripper is closed and not near the " + object, "open_gripper"},
      {"the gripper is not near the " + object, above_id},
      {"the gripper is above the " + object, down_id},
      {"the gripper is open and around the " + around_object, "close_gripper"},
      {"the gripper is closed and around the " + around_object, finish_id},
  };
}

// Move straight onto a handle, close, then drag it.
Steps slide_plan(const std::string& handle, const std::string& around_id,
                 const std::string& finish_id) {
  return {
      {"the gripper is closed and not near the " + handle, "open_gripper"},
      {"the gripper is not around the " + handle, around_id},
      {"the gripper is open", "close_gripper"},
      {"the gripper is closed and around the " + handle, finish_id},
  };
}

Steps press_plan(const std::string& object, const std::string& approach_id,
                 const std::string& press_id) {
  return {
      {"the gripper is not near the " + object, approach_id},
      {"the gripper is near the " + object, press_id},
  };
}

// From above: hover, close into a fist, then push down.
Steps press_down_plan(const std::string& object, const std::string& above_id,
                      const std::string& press_id) {
  return {
      {"the gripper is not near the " + object, above_id},
      {"the gripper is open", "close_gripper"},
      {"the gripper is closed", press_id},
  };
}

std::map<std::string, ExpertPlan> build_plans() {
  const Steps reach = {{"the gripper is closed", "open_gripper"},
                       {"the gripper is open", "reach_goal"}};
  std::map<std::string, Steps> steps = {
      {"reach", reach},
      {"push", grasp_plan("puck", "puck", "above_puck", "down_to_puck", "slide_puck")},
      {"pick-place", grasp_plan("puck", "puck", "above_puck", "down_to_puck", "move_puck")},
      {"drawer-open", grasp_plan("drawer handle", "drawer", "above_drawer_handle",
                                 "down_to_drawer_handle", "pull_drawer_open")},
      {"drawer-close", grasp_plan("drawer handle", "drawer", "above_drawer_handle",
                                  "down_to_drawer_handle", "push_drawer_closed")},
      {"button-press", press_plan("button", "front_of_button", "push_button")},
      {"door-open", grasp_plan("door handle", "door handle", "above_door_handle",
                               "down_to_door_handle", "pull_door_open")},
      {"window-open", slide_plan("window handle", "around_window_handle", "slide_window_open")},
      {"window-close",
       slide_plan("window handle", "around_window_handle", "slide_window_closed")},
      {"peg-insert", grasp_plan("peg", "peg", "above_peg", "down_to_peg", "insert_peg")},
      {"coffee-button", press_plan("button", "front_of_button", "push_button")},
      {"button-press-topdown", press_down_plan("button", "above_button", "press_button_down")},
      {"door-close", grasp_plan("door handle", "door handle", "above_door_handle",
                                "down_to_door_handle", "push_door_closed")},
      {"shelf-place", grasp_plan("puck", "puck", "above_puck", "down_to_puck", "move_puck")},
      {"push-back", grasp_plan("puck", "puck", "above_puck", "down_to_puck", "slide_puck")},
      {"reach-wall", reach},
      {"pick-place-wall", grasp_plan("puck", "puck", "above_puck", "down_to_puck", "move_puck")},
      {"faucet-open", slide_plan("faucet handle", "around_faucet_handle", "turn_faucet_open")},
      {"faucet-close",
       slide_plan("faucet handle", "around_faucet_handle", "turn_faucet_closed")},
      {"handle-press", press_down_plan("handle", "above_handle", "press_handle_down")},
  };
  std::map<std::string, ExpertPlan> plans;
  for (auto& [task, s] : steps) plans[task] = ExpertPlan{task, std::move(s)};
  return plans;
}

}  // namespace

const ExpertPlan& expert_plan(const std::string& task) {
  static const std::map<std::string, ExpertPlan> plans = build_plans();
  auto it = plans.find(task);
  if (it == plans.end()) throw NotFound("no expert plan for task '" + task + "'");
  return it->second;
}

ScriptedPlan compile(const ExpertPlan& plan, const world::TaskSpec& task) {
  std::vector<std::pair<std::string, std::string>> steps;
  for (const auto& s : plan.steps) {
    const Skill* skill = nullptr;
    try {
      skill = &find_skill(s.skill_id);
    } catch (const NotFound& e) {
      throw PlanError(e.what());
    }
    steps.emplace_back(s.query, skill->description);
  }
  return compile_grounded(plan.task, steps, task);
}

ScriptedPlan compile_grounded(const std::string& task_name,
                              const std::vector<std::pair<std::string, std::string>>& steps,
                              const world::TaskSpec& task) {
  if (steps.empty()) throw PlanError("plan for '" + task_name + "' has no steps");
  ScriptedPlan out;
  out.task = task_name;
  for (const auto& [condition, description] : steps) {
    query::Query q;
    try {
      q = query::parse_query(condition, task);
    } catch (const query::QueryError& e) {
      throw PlanError("condition '" + condition + "': " + e.what());
    }
    if (query::render(q) != condition) {
      throw PlanError("condition '" + condition + "' is not in canonical form");
    }
    const Skill* skill = find_by_description(description);
    if (skill == nullptr) throw PlanError("'" + description + "' is not a library skill");
    out.conditions.push_back(std::move(q));
    out.skills.push_back(skill);
  }
  return out;
}

std::size_t select_step(const ScriptedPlan& plan, const world::WorldState& state) {
  for (std::size_t i = 0; i < plan.conditions.size(); ++i) {
    if (query::eval_query(plan.conditions[i], state)) return i;
  }
  return plan.conditions.size() - 1;
}

world::Action scripted_action(const ScriptedPlan& plan, const world::WorldState& state) {
  return skill_action(*plan.skills[select_step(plan, state)], state);
}

ScriptedRollout run_scripted(const ScriptedPlan& plan, const world::TaskSpec& task,
                             std::uint64_t seed) {
  ScriptedRollout out;
  out.demo.task = task.name;
  out.demo.seed = seed;
  out.trajectory.reserve(world::constants::kHorizon + 1);
  out.demo.observations.reserve(world::constants::kHorizon);
  out.demo.actions.reserve(world::constants::kHorizon);
  out.trajectory.push_back(world::reset(task, seed));
  for (int t = 0; t < world::constants::kHorizon; ++t) {
    const world::WorldState& s = out.trajectory.back();
    const world::Action a = scripted_action(plan, s);
    out.demo.observations.push_back(world::observe(s));
    out.demo.actions.push_back(a);
    out.trajectory.push_back(world::step(s, a));
  }
  out.demo.success = world::episode_success(task, out.trajectory);
  return out;
}

ScriptedRollout run_expert(const world::TaskSpec& task, const ExpertPlan& plan,
                           std::uint64_t seed) {
  return run_scripted(compile(plan, task), task, seed);
}

}  // namespace lw::skills
