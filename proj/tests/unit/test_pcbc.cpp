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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <json.hpp>

#include "lw/evalkit/evalkit.hpp"
#include "lw/pcbc/checkpoint.hpp"
#include "lw/pcbc/gradcheck.hpp"
#include "lw/pcbc/params.hpp"
#include "lw/pcbc/policy.hpp"
#include "lw/skills/expert.hpp"
#include "lw/skills/skill.hpp"
#include "lw/training/training.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/world.hpp"
#include "oracles.hpp"

using namespace lw;
namespace fs = std::filesystem;

namespace {
std::map<std::string, skills::ScriptedPlan> all_expert_plans() {
  return training::expert_plans(world::task_names(world::TaskSet::kFull20));
}
}  // namespace

TEST_CASE("sizes") {
  const auto p = pcbc::PolicyParams::init(0);
  CHECK(p.parameter_count() == 15620);
  CHECK(p.decoder_parameter_count() == 7428);
  CHECK(p.encoder.rows() == 32);
  CHECK(p.encoder.cols() == 256);
  CHECK(p.all_finite());
  CHECK(pcbc::PolicyParams::init(0) == p);
  CHECK_FALSE(pcbc::PolicyParams::init(1) == p);
}

TEST_CASE("text encoder") {
  const auto p = pcbc::PolicyParams::init(3);
  CHECK(pcbc::encode_text(p, "pull the drawer open") == pcbc::encode_text(p, "pull the drawer open"));
  CHECK(pcbc::encode_text(p, "Pull  the drawer OPEN") == pcbc::encode_text(p, "pull the drawer open"));
  auto z = p;
  z.encoder.setZero();
  CHECK(pcbc::encode_text(z, "push the puck to the goal").isZero(0.0));
  CHECK_THROWS_AS(pcbc::encode_text(p, "   "), InvalidArgument);
  const auto bow = pcbc::bag_of_words("the puck the goal");
  CHECK(bow.sum() == 4.0);
  CHECK(bow.maxCoeff() == 2.0);
}

TEST_CASE("skill descriptions have distinct word counts") {
  std::set<std::vector<double>> seen;
  for (const auto& d : skills::library_descriptions()) {
    const auto v = pcbc::bag_of_words(d);
    seen.insert(std::vector<double>(v.data(), v.data() + v.size()));
  }
  CHECK(seen.size() == 30);
}

TEST_CASE("attention weights") {
  const auto u = pcbc::attention_weights({false, false, false, false, false}, pcbc::kAttentionScale);
  for (int i = 0; i < 5; ++i) CHECK(u[i] == doctest::Approx(0.2).epsilon(1e-15));

  std::vector<bool> one(10, false);
  one[3] = true;
  const auto w = pcbc::attention_weights(one, pcbc::kAttentionScale);
  CHECK(w[3] == doctest::Approx(0.99699).epsilon(1e-5));
  CHECK(std::fabs(w[3] - std::exp(8.0) / (std::exp(8.0) + 9)) < 1e-12);
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<bool> two(10, false);
  two[0] = two[7] = true;
  const auto v = pcbc::attention_weights(two, pcbc::kAttentionScale);
  CHECK(v[0] == v[7]);
  // Closed form e^8 / (2 e^8 + 8) = 0.49933; 0.4985 is only good to ~1e-3.
  CHECK(v[0] == doctest::Approx(0.49933).epsilon(1e-5));
  CHECK(std::fabs(v[0] - 0.4985) < 1e-3);
  CHECK(std::fabs(v[0] - oracle::attention_true(10, 2, 8.0)) < 1e-12);
  CHECK(std::fabs(v[1] - oracle::attention_false(10, 2, 8.0)) < 1e-12);
}

TEST_CASE("actions depend only on the observation and truths") {
  const auto plans = all_expert_plans();
  const pcbc::PcbcPolicy policy(pcbc::PolicyParams::init(5), plans);
  auto a = world::reset("drawer-open", 3);
  auto b = a;
  b.attached = "drawer handle";
  b.find("drawer handle")->joint->hi = 0.5;
  CHECK(policy.act("drawer-open", a) == policy.act("drawer-open", b));
  const pcbc::DcPolicy dc(pcbc::PolicyParams::init(5));
  CHECK(dc.act_dc("drawer-open", a) == dc.act_dc("drawer-open", b));
}

TEST_CASE("mixing is order free") {
  const auto params = pcbc::PolicyParams::init(8);
  auto plans = all_expert_plans();
  const pcbc::PcbcPolicy forward(params, plans);
  auto& plan = plans.at("pick-place");
  std::reverse(plan.conditions.begin(), plan.conditions.end());
  std::reverse(plan.skills.begin(), plan.skills.end());
  const pcbc::PcbcPolicy reversed(params, plans);
  auto s = world::reset("pick-place", 1);
  for (int k = 0; k < 30; ++k) {
    const auto x = forward.act("pick-place", s).vector();
    const auto y = reversed.act("pick-place", s).vector();
    CHECK((x - y).cwiseAbs().maxCoeff() < 1e-12);
    s = world::step(s, forward.act("pick-place", s));
  }
}

TEST_CASE("descriptor latents follow the text") {
  const auto p = pcbc::PolicyParams::init(2);
  const pcbc::DcPolicy dc(p);
  for (const auto& t : world::all_tasks()) CHECK(dc.latent(t.name) == pcbc::encode_text(p, t.description));
}

TEST_CASE("condition truths from a state and from its observation agree") {
  const auto plans = all_expert_plans();
  for (const auto& t : world::all_tasks()) {
    const auto& plan = plans.at(t.name);
    const auto run = skills::run_scripted(plan, t, 2);
    for (const auto& s : run.trajectory) {
      const auto scene = world::scene_from_observation(t, world::observe(s));
      REQUIRE(pcbc::condition_truths(plan, s) == pcbc::condition_truths(plan, scene));
    }
  }
}

TEST_CASE("loss values") {
  auto batch = pcbc::random_instance(pcbc::Arch::kPcbc, 4, 6);
  const auto zero = pcbc::PolicyParams::zeros();
  batch.actions.setOnes();
  CHECK(pcbc::bc_loss(zero, batch) == 1.0);

  const auto p = pcbc::PolicyParams::init(4);
  for (Eigen::Index j = 0; j < batch.size(); ++j) {
    const world::Observation obs = batch.obs.col(j);
    batch.actions.col(j) = pcbc::decode(p, obs, p.encoder * batch.text.col(j));
  }
  CHECK(pcbc::bc_loss(p, batch) < 1e-28);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto b = pcbc::random_instance(pcbc::Arch::kDc, seed, 3);
    CHECK(pcbc::bc_loss(p, b) >= 0.0);
    CHECK(pcbc::bc_loss(p, b) == doctest::Approx(oracle::bc_loss(p, b)).epsilon(1e-12));
  }
}

TEST_CASE("gradients match finite differences") {
  for (auto arch : {pcbc::Arch::kPcbc, pcbc::Arch::kDc}) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto report = pcbc::grad_check(pcbc::PolicyParams::init(i), pcbc::random_instance(arch, 100 + i));
      CHECK(report.max_rel_error < 1e-4);
      CHECK(report.checked == 15620);
      REQUIRE(report.worst_per_block.size() == 7);
      CHECK(report.worst_per_block.front().block == "encoder");
    }
  }
  CHECK(pcbc::relative_error(0.0, 0.0, 1e-6) == 0.0);
  CHECK(pcbc::relative_error(2.0, 1.0, 1e-6) == 0.5);
  // Vocabulary entries absent from the batch have exactly zero gradient.
  const auto report = pcbc::grad_check(pcbc::PolicyParams::init(1), pcbc::random_instance(pcbc::Arch::kDc, 1, 1));
  CHECK(report.passed());
}

TEST_CASE("checkpoints reload bit for bit") {
  training::TrainConfig tc;
  tc.steps = 20;
  tc.batch_size = 20;
  tc.seed = 6;
  training::DataConfig data = training::DataConfig::few_shot();
  data.demos_per_task = 1;
  const auto demos = skills::generate_demos(data.tasks(), 1, 10);
  const auto r = training::train(tc, data, pcbc::Arch::kPcbc, demos, all_expert_plans(), nullptr);
  const fs::path path = fs::temp_directory_path() / "lw_ckpt_test.json";
  pcbc::save_checkpoint(path, r.checkpoint);
  const auto back = pcbc::load_checkpoint(path);
  CHECK(back.params == r.checkpoint.params);
  CHECK(back.rng == r.checkpoint.rng);
  CHECK(back.steps == 20);
  CHECK(back.arch == pcbc::Arch::kPcbc);
  CHECK(back.meta == r.checkpoint.meta);

  auto doc = pcbc::to_json(r.checkpoint);
  doc["format"] = "other";
  CHECK_THROWS_AS(pcbc::checkpoint_from_json(doc), InvalidArgument);
  doc = pcbc::to_json(r.checkpoint);
  doc.erase("blocks");
  CHECK_THROWS_AS(pcbc::checkpoint_from_json(doc), InvalidArgument);
  doc = pcbc::to_json(r.checkpoint);
  doc["blocks"][1]["shape"] = {2, 2};
  CHECK_THROWS_AS(pcbc::checkpoint_from_json(doc), InvalidArgument);
  fs::remove(path);
  CHECK_THROWS_AS(pcbc::load_checkpoint(path), Error);
}
