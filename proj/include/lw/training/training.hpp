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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lw/common/error.hpp"
#include "lw/common/rng.hpp"
#include "lw/pcbc/checkpoint.hpp"
#include "lw/pcbc/policy.hpp"
#include "lw/skills/demos.hpp"
#include "lw/skills/expert.hpp"

namespace lw::training {

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& message) : Error("training", message) {}
};

inline constexpr int kMaxBatchSize = 199;

struct TrainConfig {
  int batch_size = 120;
  double learning_rate = 1e-3;
  int steps = 5000;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  // Throws TrainingError when a field is out of range.
  void validate() const;
};

enum class DataMode { kZeroShot, kFewShot, kOneShot };
std::string to_string(DataMode mode);
DataMode parse_data_mode(const std::string& name);

struct DataConfig {
  DataMode mode = DataMode::kFewShot;
  // Demos per task: 100 base demos for zero/one shot, 10 for few shot.
  int demos_per_task = 10;
  // One-shot target task; the target contributes its first demonstration.
  std::string target;

  static DataConfig zero_shot();
  static DataConfig few_shot();
  static DataConfig one_shot(const std::string& target);

  // Task names whose full demo sets form the base side. A one_shot target's
  // single demo is added separately.
  std::vector<std::string> tasks() const;
  // A one_shot config read from a file may leave the target open (every task).
  void validate(bool need_target = true) const;
};

nlohmann::json to_json(const TrainConfig& c);
nlohmann::json to_json(const DataConfig& c);
// Missing fields keep their defaults; unknown fields are rejected.
TrainConfig train_config_from_json(const nlohmann::json& doc);
DataConfig data_config_from_json(const nlohmann::json& doc);

// The timesteps of one task, one sample per column. The text column the
// encoder consumes (mixed skill counts or description counts) takes few
// distinct values, so steps index into a table of them.
struct TaskData {
  std::string task;
  Eigen::MatrixXd obs;
  Eigen::MatrixXd actions;
  Eigen::MatrixXd text_table;    // kVocabSize x distinct columns
  std::vector<int> text_index;  // per step

  Eigen::Index size() const { return obs.cols(); }
  auto text(Eigen::Index step) const {
    return text_table.col(text_index[static_cast<std::size_t>(step)]);
  }
};

// Builds TaskData from demonstrations. For PCBC each step's condition
// truths are evaluated on the scene rebuilt from its observation.
TaskData task_data(pcbc::Arch arch, const world::TaskSpec& task,
                   const std::vector<skills::Demonstration>& demos,
                   const skills::ScriptedPlan* plan);

struct Minibatch {
  pcbc::Batch batch;
  std::vector<std::string> tasks;  // source task of every column
};

// batch_size / |tasks| samples per task, with replacement.
Minibatch sample_uniform(const std::vector<TaskData>& tasks, int batch_size, CounterRng& rng);
// batch_size / 2 from the target, the rest split evenly over base tasks.
Minibatch sample_colearning(const std::vector<TaskData>& base, const TaskData& target,
                            int batch_size, CounterRng& rng);

// Adaptive-moment optimizer over every parameter block.
class Adam {
 public:
  explicit Adam(const TrainConfig& config);
  void step(pcbc::PolicyParams& params, const pcbc::PolicyParams& grad);
  std::uint64_t steps() const { return t_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::uint64_t t_ = 0;
  pcbc::PolicyParams m_, v_;
};

struct TrainResult {
  pcbc::Checkpoint checkpoint;
  std::vector<double> losses;  // loss before each update
};

// Resolves the demos and plans a run needs. Throws TrainingError when a
// task lacks demonstrations or (for PCBC) a plan.
std::vector<TaskData> prepare(pcbc::Arch arch, const DataConfig& data, const skills::DemoSet& demos,
                              const std::map<std::string, skills::ScriptedPlan>& plans,
                              std::optional<TaskData>* target);

// Runs config.steps updates. `log`, when given, receives the CSV training
// log (step,loss,wall_ms).
TrainResult train(const TrainConfig& config, const DataConfig& data, pcbc::Arch arch,
                  const skills::DemoSet& demos,
                  const std::map<std::string, skills::ScriptedPlan>& plans,
                  std::ostream* log = nullptr);

inline constexpr std::uint64_t kDefaultDemoSeed = 1000000;

// Exactly the demonstrations a data configuration reads: zero_shot and
// one_shot take demos_per_task for every BASE10 task, few_shot for every
// FULL20 task; one_shot adds one demo of every other FULL20 task so a
// single set serves all targets.
skills::DemoSet demos_for(const DataConfig& data, std::uint64_t seed = kDefaultDemoSeed);

// Compiled registry plans for the named tasks.
std::map<std::string, skills::ScriptedPlan> expert_plans(const std::vector<std::string>& tasks);

}  // namespace lw::training
