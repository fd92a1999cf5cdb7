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
#include <string>
#include <utility>
#include <vector>

#include "lw/query/query.hpp"
#include "lw/skills/skill.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/types.hpp"

namespace lw::skills {

struct ExpertStep {
  std::string query;     // canonical sentence
  std::string skill_id;
};

// Hand-written query -> skill mapping for one task.
struct ExpertPlan {
  std::string task;
  std::vector<ExpertStep> steps;
};

// Registry plan for any of the 20 tasks. Throws NotFound.
const ExpertPlan& expert_plan(const std::string& task);

// Executable form shared by expert plans and grounded conditional plans.
struct ScriptedPlan {
  std::string task;
  std::vector<query::Query> conditions;
  std::vector<const Skill*> skills;
};

class PlanError : public Error {
 public:
  explicit PlanError(const std::string& message) : Error("plan", message) {}
};

// Validates that every query is canonical for the task and every skill id
// exists. Throws PlanError.
ScriptedPlan compile(const ExpertPlan& plan, const world::TaskSpec& task);
// Steps given as (condition sentence, skill description); both must already
// be in the supported vocabulary. Throws PlanError.
ScriptedPlan compile_grounded(const std::string& task_name,
                              const std::vector<std::pair<std::string, std::string>>& steps,
                              const world::TaskSpec& task);

// Index of the first step whose condition holds; the last step otherwise.
std::size_t select_step(const ScriptedPlan& plan, const world::WorldState& state);
world::Action scripted_action(const ScriptedPlan& plan, const world::WorldState& state);

struct Demonstration {
  std::string task;
  std::uint64_t seed = 0;
  std::vector<world::Observation> observations;  // one per step, 500
  std::vector<world::Action> actions;
  bool success = false;
};

struct ScriptedRollout {
  std::vector<world::WorldState> trajectory;  // 501 states including reset
  Demonstration demo;
};

// Runs a scripted plan for the full horizon from reset(task, seed).
ScriptedRollout run_scripted(const ScriptedPlan& plan, const world::TaskSpec& task,
                             std::uint64_t seed);
ScriptedRollout run_expert(const world::TaskSpec& task, const ExpertPlan& plan,
                           std::uint64_t seed);

}  // namespace lw::skills
