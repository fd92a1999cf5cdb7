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

#include "lw/pcbc/policy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "lw/common/error.hpp"
#include "lw/common/hash.hpp"
#include "lw/pcbc/tape.hpp"
#include "lw/query/query.hpp"
#include "lw/world/world.hpp"

namespace lw::pcbc {

Eigen::VectorXd bag_of_words(const std::string& text) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(kVocabSize);
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::istringstream in(lowered);
  std::string token;
  while (in >> token) counts(static_cast<Eigen::Index>(fnv1a64(token) % kVocabSize)) += 1.0;
  return counts;
}

Eigen::VectorXd encode_text(const PolicyParams& params, const std::string& text) {
  const Eigen::VectorXd counts = bag_of_words(text);
  if (counts.sum() == 0.0) throw InvalidArgument("encode_text: empty text");
  return params.encoder * counts;
}

Eigen::VectorXd attention_weights(const std::vector<bool>& truths, double scale) {
  if (truths.empty()) throw InvalidArgument("attention_weights: no conditions");
  const auto n = static_cast<Eigen::Index>(truths.size());
  Eigen::VectorXd logits(n);
  for (Eigen::Index i = 0; i < n; ++i) logits(i) = truths[static_cast<std::size_t>(i)] ? scale : 0.0;
  const double top = logits.maxCoeff();
  Eigen::VectorXd w = (logits.array() - top).exp().matrix();
  return w / w.sum();
}

Eigen::Vector4d decode(const PolicyParams& p, const world::Observation& obs,
                       const Eigen::VectorXd& latent) {
  Eigen::VectorXd x(kDecoderInputDim);
  x << obs, latent;
  const Eigen::VectorXd h1 = (p.w1 * x + p.b1.col(0)).array().tanh().matrix();
  const Eigen::VectorXd h2 = (p.w2 * h1 + p.b2.col(0)).array().tanh().matrix();
  return (p.w3 * h2 + p.b3.col(0)).array().tanh().matrix();
}

Eigen::MatrixXd skill_counts(const skills::ScriptedPlan& plan) {
  Eigen::MatrixXd counts(kVocabSize, static_cast<Eigen::Index>(plan.skills.size()));
  for (std::size_t i = 0; i < plan.skills.size(); ++i) {
    counts.col(static_cast<Eigen::Index>(i)) = bag_of_words(plan.skills[i]->description);
  }
  return counts;
}

std::vector<bool> condition_truths(const skills::ScriptedPlan& plan, const world::WorldState& state) {
  std::vector<bool> truths;
  truths.reserve(plan.conditions.size());
  for (const auto& c : plan.conditions) truths.push_back(query::eval_query(c, state));
  return truths;
}

Eigen::VectorXd mixed_counts(const Eigen::MatrixXd& counts, const std::vector<bool>& truths) {
  if (static_cast<Eigen::Index>(truths.size()) != counts.cols()) {
    throw InvalidArgument("mixed_counts: truth count does not match plan length");
  }
  return counts * attention_weights(truths);
}

namespace {

world::Action to_action(const Eigen::Vector4d& out) {
  world::Action a;
  a.move = out.head<3>();
  a.grip = out(3);
  return a;
}

}  // namespace

PcbcPolicy::PcbcPolicy(PolicyParams params, std::map<std::string, skills::ScriptedPlan> plans)
    : params_(std::move(params)), plans_(std::move(plans)) {
  for (const auto& [task, plan] : plans_) {
    if (plan.conditions.empty() || plan.conditions.size() != plan.skills.size()) {
      throw InvalidArgument("plan for " + task + " is empty or malformed");
    }
    latents_.emplace(task, params_.encoder * skill_counts(plan));
  }
}

const skills::ScriptedPlan& PcbcPolicy::plan(const std::string& task) const {
  auto it = plans_.find(task);
  if (it == plans_.end()) throw NotFound("no plan for task " + task);
  return it->second;
}

const Eigen::MatrixXd& PcbcPolicy::latents(const std::string& task) const {
  auto it = latents_.find(task);
  if (it == latents_.end()) throw NotFound("no plan for task " + task);
  return it->second;
}

Eigen::VectorXd PcbcPolicy::mixed_latent(const std::string& task, const std::vector<bool>& truths) const {
  const Eigen::MatrixXd& z = latents(task);
  if (static_cast<Eigen::Index>(truths.size()) != z.cols()) {
    throw InvalidArgument("mixed_latent: truth count does not match plan length");
  }
  return z * attention_weights(truths);
}

world::Action PcbcPolicy::act(const std::string& task, const world::WorldState& state) const {
  const auto truths = condition_truths(plan(task), state);
  return to_action(decode(params_, world::observe(state), mixed_latent(task, truths)));
}

DcPolicy::DcPolicy(PolicyParams params) : params_(std::move(params)) {
  for (const auto& t : world::all_tasks()) latents_.emplace(t.name, encode_text(params_, t.description));
}

Eigen::VectorXd DcPolicy::latent(const std::string& task) const {
  auto it = latents_.find(task);
  if (it == latents_.end()) throw NotFound("unknown task: " + task);
  return it->second;
}

world::Action DcPolicy::act_dc(const std::string& task, const world::WorldState& state) const {
  return to_action(decode(params_, world::observe(state), latent(task)));
}

namespace {

void check_batch(const Batch& b) {
  if (b.size() == 0) throw InvalidArgument("empty batch");
  if (b.obs.rows() != world::kObservationDim || b.text.rows() != kVocabSize ||
      b.actions.rows() != kActionDim || b.text.cols() != b.size() || b.actions.cols() != b.size()) {
    throw InvalidArgument("batch shape mismatch");
  }
}

}  // namespace

double bc_loss(const PolicyParams& p, const Batch& batch) {
  check_batch(batch);
  const Eigen::MatrixXd latent = p.encoder * batch.text;
  Eigen::MatrixXd x(kDecoderInputDim, batch.size());
  x << batch.obs, latent;
  const Eigen::MatrixXd h1 = ((p.w1 * x).colwise() + p.b1.col(0)).array().tanh().matrix();
  const Eigen::MatrixXd h2 = ((p.w2 * h1).colwise() + p.b2.col(0)).array().tanh().matrix();
  const Eigen::MatrixXd out = ((p.w3 * h2).colwise() + p.b3.col(0)).array().tanh().matrix();
  return (out - batch.actions).squaredNorm() / static_cast<double>(batch.actions.size());
}

double loss_and_gradient(const PolicyParams& p, const Batch& batch, PolicyParams* grad) {
  check_batch(batch);
  *grad = PolicyParams::zeros();
  ad::Tape t;
  const ad::Var enc = t.parameter(p.encoder, &grad->encoder);
  const ad::Var w1 = t.parameter(p.w1, &grad->w1);
  const ad::Var b1 = t.parameter(p.b1, &grad->b1);
  const ad::Var w2 = t.parameter(p.w2, &grad->w2);
  const ad::Var b2 = t.parameter(p.b2, &grad->b2);
  const ad::Var w3 = t.parameter(p.w3, &grad->w3);
  const ad::Var b3 = t.parameter(p.b3, &grad->b3);

  const ad::Var latent = t.matmul(enc, t.constant(batch.text));
  const ad::Var x = t.vconcat(t.constant(batch.obs), latent);
  const ad::Var h1 = t.tanh(t.add_bias(t.matmul(w1, x), b1));
  const ad::Var h2 = t.tanh(t.add_bias(t.matmul(w2, h1), b2));
  const ad::Var out = t.tanh(t.add_bias(t.matmul(w3, h2), b3));
  const ad::Var loss = t.mean_squared_error(out, batch.actions);
  t.backward(loss);
  return t.value(loss)(0, 0);
}

}  // namespace lw::pcbc
