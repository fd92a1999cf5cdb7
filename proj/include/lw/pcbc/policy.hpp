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

#include <Eigen/Core>

#include "lw/pcbc/params.hpp"
#include "lw/skills/expert.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/types.hpp"

namespace lw::pcbc {

inline constexpr double kAttentionScale = 8.0;

// Lowercased, whitespace-split tokens hashed into kVocabSize count bins.
Eigen::VectorXd bag_of_words(const std::string& text);
// encoder * bag_of_words(text). Throws InvalidArgument on blank text.
Eigen::VectorXd encode_text(const PolicyParams& params, const std::string& text);

// softmax(scale * truths).
Eigen::VectorXd attention_weights(const std::vector<bool>& truths,
                                  double scale = kAttentionScale);

// Decoder output for one observation and latent; entries in (-1, 1).
Eigen::Vector4d decode(const PolicyParams& params, const world::Observation& obs,
                       const Eigen::VectorXd& latent);

// Skill-description count vectors of a grounded plan, one column per step.
Eigen::MatrixXd skill_counts(const skills::ScriptedPlan& plan);
std::vector<bool> condition_truths(const skills::ScriptedPlan& plan,
                                   const world::WorldState& state);
// Text-count column that the encoder maps to the mixed skill latent.
Eigen::VectorXd mixed_counts(const Eigen::MatrixXd& counts, const std::vector<bool>& truths);

class PcbcPolicy {
 public:
  PcbcPolicy(PolicyParams params, std::map<std::string, skills::ScriptedPlan> plans);

  world::Action act(const std::string& task, const world::WorldState& state) const;
  // z_s for the given truths, mixed from the cached skill latents.
  Eigen::VectorXd mixed_latent(const std::string& task, const std::vector<bool>& truths) const;

  const PolicyParams& params() const { return params_; }
  const skills::ScriptedPlan& plan(const std::string& task) const;
  const Eigen::MatrixXd& latents(const std::string& task) const;

 private:
  PolicyParams params_;
  std::map<std::string, skills::ScriptedPlan> plans_;
  std::map<std::string, Eigen::MatrixXd> latents_;  // kLatentDim x steps
};

class DcPolicy {
 public:
  explicit DcPolicy(PolicyParams params);

  world::Action act_dc(const std::string& task, const world::WorldState& state) const;
  Eigen::VectorXd latent(const std::string& task) const;

  const PolicyParams& params() const { return params_; }

 private:
  PolicyParams params_;
  std::map<std::string, Eigen::VectorXd> latents_;
};

// One sample per column. For PCBC a text column holds the mixed counts, for
// DC the counts of the task description; the encoder is applied to both.
struct Batch {
  Eigen::MatrixXd obs;      // kObservationDim x B
  Eigen::MatrixXd text;     // kVocabSize x B
  Eigen::MatrixXd actions;  // kActionDim x B

  Eigen::Index size() const { return obs.cols(); }
};

// Mean squared error over every action component of the batch.
double bc_loss(const PolicyParams& params, const Batch& batch);
// Same loss; *grad is overwritten with its gradient.
double loss_and_gradient(const PolicyParams& params, const Batch& batch, PolicyParams* grad);

}  // namespace lw::pcbc
