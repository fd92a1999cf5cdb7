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

#include <algorithm>

#include "lw/plans/plan.hpp"
#include "lw/query/edit_distance.hpp"
#include "lw/query/query.hpp"
#include "lw/skills/skill.hpp"

namespace lw::plans {

ConditionalPlan ground_plan(const ConditionalPlan& plan, const world::TaskSpec& task) {
  ConditionalPlan out{plan.task.empty() ? task.name : plan.task,
                      plan.description.empty() ? task.description : plan.description,
                      {}};
  out.steps.reserve(plan.steps.size());
  for (const auto& s : plan.steps) {
    out.steps.push_back({query::nearest_query(s.condition, task),
                         skills::nearest_skill(s.skill).description});
  }
  return out;
}

bool is_grounded(const ConditionalPlan& plan, const world::TaskSpec& task) {
  if (plan.steps.empty()) return false;
  for (const auto& s : plan.steps) {
    // Canonical conjunctions of supported literals, as grounding emits them.
    try {
      if (query::render(query::parse_query(s.condition, task)) != s.condition) return false;
    } catch (const query::QueryError&) {
      return false;
    }
    if (skills::find_by_description(s.skill) == nullptr) return false;
  }
  return true;
}

skills::ScriptedPlan to_scripted(const ConditionalPlan& grounded, const world::TaskSpec& task) {
  std::vector<std::pair<std::string, std::string>> steps;
  steps.reserve(grounded.steps.size());
  for (const auto& s : grounded.steps) steps.emplace_back(s.condition, s.skill);
  return skills::compile_grounded(task.name, steps, task);
}

ConditionalPlan manual_plan(const std::string& task) {
  const auto& spec = world::find_task(task);
  const auto& expert = skills::expert_plan(task);
  ConditionalPlan plan{spec.name, spec.description, {}};
  for (const auto& s : expert.steps) {
    plan.steps.push_back({s.query, skills::find_skill(s.skill_id).description});
  }
  return plan;
}

std::map<std::string, ConditionalPlan> manual_library() {
  std::map<std::string, ConditionalPlan> out;
  for (const auto& name : world::task_names(world::TaskSet::kBase10)) {
    out.emplace(name, manual_plan(name));
  }
  return out;
}

std::vector<std::string> prompt_exemplars(const world::TaskSpec& target,
                                          const std::map<std::string, ConditionalPlan>& library) {
  static const std::string kAnchor = "pick-place";
  if (library.find(kAnchor) == library.end()) {
    throw InvalidArgument("plan library lacks the pick-place exemplar");
  }
  struct Candidate {
    std::size_t distance;
    std::size_t order;
    std::string name;
  };
  std::vector<Candidate> candidates;
  const auto base = world::task_names(world::TaskSet::kBase10);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto& name = base[i];
    if (name == target.name || name == kAnchor) continue;
    auto it = library.find(name);
    if (it == library.end()) continue;
    candidates.push_back(
        {query::edit_distance(target.description, world::find_task(name).description), i, name});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.order < b.order;
  });
  std::vector<std::string> out;
  // The anchor is never shown for its own task; a third neighbour takes its slot.
  const bool anchor_is_target = target.name == kAnchor;
  if (!anchor_is_target) out.push_back(kAnchor);
  const std::size_t wanted = anchor_is_target ? 3 : 2;
  for (std::size_t i = 0; i < candidates.size() && i < wanted; ++i) out.push_back(candidates[i].name);
  return out;
}

std::string build_prompt(const world::TaskSpec& target, PlanFormat format,
                         const std::map<std::string, ConditionalPlan>& library) {
  std::string prompt;
  for (const auto& name : prompt_exemplars(target, library)) {
    prompt += encode_plan(library.at(name), format);
    prompt += "\n";
  }
  prompt += encode_header(target.name, target.description, format);
  return prompt;
}

}  // namespace lw::plans
