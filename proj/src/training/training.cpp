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

#include "lw/training/training.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lw/common/hash.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/world.hpp"

namespace lw::training {

void TrainConfig::validate() const {
  if (batch_size < 1 || batch_size > kMaxBatchSize) {
    throw TrainingError("batch_size must be in [1, " + std::to_string(kMaxBatchSize) + "], got " +
                        std::to_string(batch_size));
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw TrainingError("learning_rate must be positive");
  }
  if (steps < 0) throw TrainingError("steps must be non-negative");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw TrainingError("betas must be in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw TrainingError("epsilon must be positive");
}

std::string to_string(DataMode mode) {
  switch (mode) {
    case DataMode::kZeroShot: return "zero_shot";
    case DataMode::kFewShot: return "few_shot";
    case DataMode::kOneShot: return "one_shot";
  }
  return "";
}

DataMode parse_data_mode(const std::string& name) {
  if (name == "zero_shot") return DataMode::kZeroShot;
  if (name == "few_shot") return DataMode::kFewShot;
  if (name == "one_shot") return DataMode::kOneShot;
  throw TrainingError("unknown data mode: " + name + " (expected zero_shot, few_shot or one_shot)");
}

DataConfig DataConfig::zero_shot() { return {DataMode::kZeroShot, 100, ""}; }
DataConfig DataConfig::few_shot() { return {DataMode::kFewShot, 10, ""}; }
DataConfig DataConfig::one_shot(const std::string& target) { return {DataMode::kOneShot, 100, target}; }

std::vector<std::string> DataConfig::tasks() const {
  return world::task_names(mode == DataMode::kFewShot ? world::TaskSet::kFull20 : world::TaskSet::kBase10);
}

void DataConfig::validate(bool need_target) const {
  if (demos_per_task < 1) throw TrainingError("demos_per_task must be positive");
  if (mode == DataMode::kOneShot) {
    if (target.empty() && !need_target) return;
    if (target.empty()) throw TrainingError("one_shot needs a target task");
    try {
      world::find_task(target);
    } catch (const NotFound&) {
      throw TrainingError("unknown target task: " + target);
    }
  } else if (!target.empty()) {
    throw TrainingError("target is only meaningful for one_shot");
  }
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"batch_size", c.batch_size}, {"learning_rate", c.learning_rate}, {"steps", c.steps},
          {"seed", c.seed},             {"beta1", c.beta1},                 {"beta2", c.beta2},
          {"epsilon", c.epsilon}};
}

nlohmann::json to_json(const DataConfig& c) {
  nlohmann::json j = {{"mode", to_string(c.mode)}, {"demos_per_task", c.demos_per_task}};
  if (!c.target.empty()) j["target"] = c.target;
  return j;
}

namespace {

void reject_unknown(const nlohmann::json& doc, std::initializer_list<const char*> known,
                    const std::string& what) {
  if (!doc.is_object()) throw TrainingError(what + " must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw TrainingError("unknown " + what + " field: " + key);
  }
}

template <typename T>
void read_field(const nlohmann::json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw TrainingError(std::string("bad value for ") + key + ": " + doc.at(key).dump());
  }
}

}  // namespace

TrainConfig train_config_from_json(const nlohmann::json& doc) {
  reject_unknown(doc, {"batch_size", "learning_rate", "steps", "seed", "beta1", "beta2", "epsilon"},
                 "train config");
  TrainConfig c;
  read_field(doc, "batch_size", c.batch_size);
  read_field(doc, "learning_rate", c.learning_rate);
  read_field(doc, "steps", c.steps);
  read_field(doc, "seed", c.seed);
  read_field(doc, "beta1", c.beta1);
  read_field(doc, "beta2", c.beta2);
  read_field(doc, "epsilon", c.epsilon);
  c.validate();
  return c;
}

DataConfig data_config_from_json(const nlohmann::json& doc) {
  reject_unknown(doc, {"mode", "demos_per_task", "target"}, "data config");
  std::string mode = "few_shot";
  read_field(doc, "mode", mode);
  DataConfig c;
  c.mode = parse_data_mode(mode);
  c.demos_per_task = c.mode == DataMode::kFewShot ? 10 : 100;
  read_field(doc, "demos_per_task", c.demos_per_task);
  read_field(doc, "target", c.target);
  c.validate(false);
  return c;
}

TaskData task_data(pcbc::Arch arch, const world::TaskSpec& task,
                   const std::vector<skills::Demonstration>& demos,
                   const skills::ScriptedPlan* plan) {
  if (arch == pcbc::Arch::kPcbc && plan == nullptr) {
    throw TrainingError("no plan for task " + task.name);
  }
  Eigen::Index n = 0;
  for (const auto& d : demos) n += static_cast<Eigen::Index>(d.actions.size());
  if (n == 0) throw TrainingError("no demonstration steps for task " + task.name);

  TaskData out;
  out.task = task.name;
  out.obs.resize(world::kObservationDim, n);
  out.actions.resize(pcbc::kActionDim, n);
  out.text_index.reserve(static_cast<std::size_t>(n));
  const Eigen::MatrixXd counts =
      arch == pcbc::Arch::kPcbc ? pcbc::skill_counts(*plan) : Eigen::MatrixXd();
  std::map<std::vector<bool>, int> seen;
  std::vector<Eigen::VectorXd> columns;
  if (arch == pcbc::Arch::kDc) columns.push_back(pcbc::bag_of_words(task.description));
  Eigen::Index col = 0;
  for (const auto& d : demos) {
    if (d.observations.size() != d.actions.size()) {
      throw TrainingError("demonstration of " + task.name + " has mismatched lengths");
    }
    for (std::size_t t = 0; t < d.actions.size(); ++t, ++col) {
      out.obs.col(col) = d.observations[t];
      out.actions.col(col) = d.actions[t].vector();
      if (arch == pcbc::Arch::kDc) {
        out.text_index.push_back(0);
        continue;
      }
      const auto scene = world::scene_from_observation(task, d.observations[t]);
      auto truths = pcbc::condition_truths(*plan, scene);
      auto [it, fresh] = seen.try_emplace(truths, static_cast<int>(columns.size()));
      if (fresh) columns.push_back(pcbc::mixed_counts(counts, truths));
      out.text_index.push_back(it->second);
    }
  }
  out.text_table.resize(pcbc::kVocabSize, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out.text_table.col(static_cast<Eigen::Index>(i)) = columns[i];
  }
  return out;
}

namespace {

Minibatch empty_minibatch(int batch_size) {
  Minibatch m;
  m.batch.obs.resize(world::kObservationDim, batch_size);
  m.batch.text.resize(pcbc::kVocabSize, batch_size);
  m.batch.actions.resize(pcbc::kActionDim, batch_size);
  m.tasks.reserve(static_cast<std::size_t>(batch_size));
  return m;
}

void draw(const TaskData& data, int count, CounterRng& rng, Minibatch& m) {
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(data.size())));
    const auto col = static_cast<Eigen::Index>(m.tasks.size());
    m.batch.obs.col(col) = data.obs.col(j);
    m.batch.text.col(col) = data.text(j);
    m.batch.actions.col(col) = data.actions.col(j);
    m.tasks.push_back(data.task);
  }
}

}  // namespace

Minibatch sample_uniform(const std::vector<TaskData>& tasks, int batch_size, CounterRng& rng) {
  if (tasks.empty()) throw TrainingError("no tasks to sample from");
  if (batch_size < 1 || batch_size % static_cast<int>(tasks.size()) != 0) {
    throw TrainingError("batch size " + std::to_string(batch_size) + " is not divisible by " +
                        std::to_string(tasks.size()) + " tasks");
  }
  const int per_task = batch_size / static_cast<int>(tasks.size());
  Minibatch m = empty_minibatch(batch_size);
  for (const auto& t : tasks) draw(t, per_task, rng, m);
  return m;
}

Minibatch sample_colearning(const std::vector<TaskData>& base, const TaskData& target,
                            int batch_size, CounterRng& rng) {
  if (base.empty()) throw TrainingError("no base tasks to sample from");
  const int n_base = static_cast<int>(base.size());
  if (batch_size < 1 || batch_size % 2 != 0 || batch_size % (2 * n_base) != 0) {
    throw TrainingError("co-learning batch size " + std::to_string(batch_size) +
                        " must be divisible by 2 and by 2 x " + std::to_string(n_base) +
                        " base tasks");
  }
  Minibatch m = empty_minibatch(batch_size);
  draw(target, batch_size / 2, rng, m);
  for (const auto& t : base) draw(t, batch_size / (2 * n_base), rng, m);
  return m;
}

Adam::Adam(const TrainConfig& c)
    : lr_(c.learning_rate),
      beta1_(c.beta1),
      beta2_(c.beta2),
      eps_(c.epsilon),
      m_(pcbc::PolicyParams::zeros()),
      v_(pcbc::PolicyParams::zeros()) {}

void Adam::step(pcbc::PolicyParams& params, const pcbc::PolicyParams& grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  std::vector<Eigen::MatrixXd*> p, m, v;
  std::vector<const Eigen::MatrixXd*> g;
  params.for_each_block([&](const char*, Eigen::MatrixXd& x) { p.push_back(&x); });
  m_.for_each_block([&](const char*, Eigen::MatrixXd& x) { m.push_back(&x); });
  v_.for_each_block([&](const char*, Eigen::MatrixXd& x) { v.push_back(&x); });
  grad.for_each_block([&](const char*, const Eigen::MatrixXd& x) { g.push_back(&x); });
  for (std::size_t i = 0; i < p.size(); ++i) {
    *m[i] = beta1_ * *m[i] + (1.0 - beta1_) * *g[i];
    *v[i] = beta2_ * *v[i] + (1.0 - beta2_) * g[i]->cwiseProduct(*g[i]);
    p[i]->array() -= lr_ * (m[i]->array() / c1) / ((v[i]->array() / c2).sqrt() + eps_);
  }
}

std::vector<TaskData> prepare(pcbc::Arch arch, const DataConfig& data, const skills::DemoSet& demos,
                              const std::map<std::string, skills::ScriptedPlan>& plans,
                              std::optional<TaskData>* target) {
  data.validate();
  auto build = [&](const std::string& name, int count) {
    const auto& spec = world::find_task(name);
    const auto* td = demos.find(name);
    if (td == nullptr || static_cast<int>(td->demos.size()) < count) {
      throw TrainingError("task " + name + " needs " + std::to_string(count) +
                          " demonstrations, found " +
                          std::to_string(td == nullptr ? 0 : td->demos.size()));
    }
    const skills::ScriptedPlan* plan = nullptr;
    if (arch == pcbc::Arch::kPcbc) {
      auto it = plans.find(name);
      if (it == plans.end()) throw TrainingError("no grounded plan for task " + name);
      plan = &it->second;
    }
    std::vector<skills::Demonstration> used(td->demos.begin(), td->demos.begin() + count);
    return task_data(arch, spec, used, plan);
  };

  std::vector<TaskData> out;
  for (const auto& name : data.tasks()) out.push_back(build(name, data.demos_per_task));
  if (data.mode == DataMode::kOneShot) {
    if (target == nullptr) throw TrainingError("one_shot needs a target slot");
    // The single target demonstration is the first successful seed's.
    const auto* td = demos.find(data.target);
    if (td == nullptr || td->demos.empty()) {
      throw TrainingError("target task " + data.target + " has no demonstration");
    }
    *target = build(data.target, 1);
  }
  return out;
}

TrainResult train(const TrainConfig& config, const DataConfig& data, pcbc::Arch arch,
                  const skills::DemoSet& demos,
                  const std::map<std::string, skills::ScriptedPlan>& plans, std::ostream* log) {
  config.validate();
  std::optional<TaskData> target;
  const auto tasks = prepare(arch, data, demos, plans, &target);

  // Fail on composition before any update.
  CounterRng rng(config.seed, fnv1a64("train-batches"));
  {
    CounterRng probe = rng;
    if (target) {
      sample_colearning(tasks, *target, config.batch_size, probe);
    } else {
      sample_uniform(tasks, config.batch_size, probe);
    }
  }

  TrainResult result;
  result.checkpoint.arch = arch;
  pcbc::PolicyParams& params = result.checkpoint.params;
  params = pcbc::PolicyParams::init(config.seed);
  Adam adam(config);
  pcbc::PolicyParams grad;
  result.losses.reserve(static_cast<std::size_t>(config.steps));

  if (log != nullptr) *log << "step,loss,wall_ms\n";
  const auto start = std::chrono::steady_clock::now();
  char line[96];
  for (int s = 0; s < config.steps; ++s) {
    const Minibatch mb = target ? sample_colearning(tasks, *target, config.batch_size, rng)
                                : sample_uniform(tasks, config.batch_size, rng);
    const double loss = pcbc::loss_and_gradient(params, mb.batch, &grad);
    adam.step(params, grad);
    result.losses.push_back(loss);
    if (log != nullptr) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      std::snprintf(line, sizeof line, "%d,%.17g,%lld\n", s, loss, static_cast<long long>(ms));
      *log << line;
    }
  }
  if (!params.all_finite()) throw TrainingError("training diverged to non-finite parameters");

  result.checkpoint.steps = adam.steps();
  result.checkpoint.rng = rng;
  result.checkpoint.meta = {{"train", to_json(config)},
                            {"data", to_json(data)},
                            {"demo_seed", demos.seed}};
  return result;
}

skills::DemoSet demos_for(const DataConfig& data, std::uint64_t seed) {
  if (data.demos_per_task < 1) throw TrainingError("demos_per_task must be positive");
  skills::DemoSet set = skills::generate_demos(data.tasks(), data.demos_per_task, seed);
  if (data.mode == DataMode::kOneShot) {
    std::vector<std::string> rest;
    for (const auto& name : world::task_names(world::TaskSet::kFull20)) {
      if (set.find(name) == nullptr) rest.push_back(name);
    }
    auto extra = skills::generate_demos(rest, 1, seed);
    for (auto& t : extra.tasks) set.tasks.push_back(std::move(t));
  }
  return set;
}

std::map<std::string, skills::ScriptedPlan> expert_plans(const std::vector<std::string>& tasks) {
  std::map<std::string, skills::ScriptedPlan> out;
  for (const auto& name : tasks) {
    out.emplace(name, skills::compile(skills::expert_plan(name), world::find_task(name)));
  }
  return out;
}

}  // namespace lw::training
