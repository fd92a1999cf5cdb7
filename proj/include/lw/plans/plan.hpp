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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lw/common/error.hpp"
#include "lw/skills/expert.hpp"
#include "lw/world/tasks.hpp"

namespace lw::plans {

struct PlanStep {
  std::string condition;
  std::string skill;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

// Ordered (condition, skill) pairs. Order matters: the first step whose
// condition holds is the active one.
struct ConditionalPlan {
  std::string task;
  std::string description;
  std::vector<PlanStep> steps;

  friend bool operator==(const ConditionalPlan&, const ConditionalPlan&) = default;
};

enum class PlanFormat { kPlainList, kBasicPyMd, kChainPy };

inline constexpr PlanFormat kAllFormats[] = {PlanFormat::kPlainList, PlanFormat::kBasicPyMd,
                                             PlanFormat::kChainPy};

std::string to_string(PlanFormat format);
PlanFormat parse_plan_format(const std::string& name);

class PlanDecodeError : public Error {
 public:
  PlanDecodeError(const std::string& message, std::string raw)
      : Error("plan_decode", message), raw_(std::move(raw)) {}
  const std::string& raw_text() const { return raw_; }

 private:
  std::string raw_;
};

nlohmann::json to_json(const ConditionalPlan& plan);
// Throws InvalidArgument on malformed documents.
ConditionalPlan plan_from_json(const nlohmann::json& doc);

// Throws InvalidArgument if the plan has no steps or an empty field.
void validate(const ConditionalPlan& plan);

std::string encode_plan(const ConditionalPlan& plan, PlanFormat format);
// Header only: what a prompt ends with for the target task.
std::string encode_header(const std::string& task, const std::string& description,
                          PlanFormat format);
// Tolerant: skips lines it cannot read. Task and description come from the
// header comment when present. Throws PlanDecodeError when no step is found.
ConditionalPlan decode_plan(const std::string& text, PlanFormat format);

// A completion continues the prompt after the target header; the header is
// supplied here when the text does not repeat it.
ConditionalPlan decode_completion(const std::string& completion, const world::TaskSpec& target,
                                  PlanFormat format);

// `robot.place("gripper above puck")` -> "place the gripper above the puck".
// Throws InvalidArgument for text that is not a robot call.
std::string skill_call_to_description(const std::string& call);
// Inverse rendering used by the python formats.
std::string description_to_skill_call(const std::string& description);

// Each condition mapped to nearest_query, each skill to the nearest library
// description. Step count and order are kept.
ConditionalPlan ground_plan(const ConditionalPlan& plan, const world::TaskSpec& task);
// Executable form of a grounded plan. Throws PlanError if not grounded.
skills::ScriptedPlan to_scripted(const ConditionalPlan& grounded, const world::TaskSpec& task);
bool is_grounded(const ConditionalPlan& plan, const world::TaskSpec& task);

// The hand-written plan of a task, expressed in library descriptions.
ConditionalPlan manual_plan(const std::string& task);
// Hand-written plans for every BASE10 task.
std::map<std::string, ConditionalPlan> manual_library();

// Exemplars: pick-place plus the two base tasks nearest to the target by
// description edit distance (three nearest when the target is pick-place).
std::vector<std::string> prompt_exemplars(const world::TaskSpec& target,
                                          const std::map<std::string, ConditionalPlan>& library);
std::string build_prompt(const world::TaskSpec& target, PlanFormat format,
                         const std::map<std::string, ConditionalPlan>& library);

}  // namespace lw::plans
