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
#include <fstream>
#include <sstream>

#include "lw/evalkit/evalkit.hpp"
#include "lw/plans/completion.hpp"
#include "lw/plans/plan.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/world.hpp"

using namespace lw;
namespace fs = std::filesystem;

namespace {

const fs::path kReplay = fs::path(LW_SOURCE_DIR) / "fixtures/replay";

evalkit::EvalResult result(const std::string& policy, const std::string& task, std::vector<bool> flags) {
  evalkit::EvalResult r;
  r.policy = policy;
  r.task = task;
  r.flags = flags;
  for (std::size_t i = 0; i < flags.size(); ++i) r.seeds.push_back(i);
  r.success_rate = static_cast<double>(std::count(flags.begin(), flags.end(), true)) /
                   static_cast<double>(flags.size());
  return r;
}

// Single root, every opened tag closed in order.
bool well_formed(const std::string& xml) {
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string::npos) {
    const auto end = xml.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = xml.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.starts_with("?") || tag.starts_with("!")) continue;
    if (tag.starts_with("/")) {
      const auto name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.ends_with("/");
    const auto name = tag.substr(0, tag.find_first_of(" /\t\n"));
    if (stack.empty()) ++roots;
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("episodes are deterministic") {
  const auto expert = evalkit::expert_policy({"push"});
  const auto& task = world::find_task("push");
  const auto a = evalkit::run_episode(expert, task, 12);
  const auto b = evalkit::run_episode(expert, task, 12);
  CHECK(a.success == b.success);
  CHECK(a.trajectory.size() == 501);
  CHECK(a.trajectory.back() == b.trajectory.back());
}

TEST_CASE("drawer-open expert and the hand-written plan") {
  const auto r = evalkit::evaluate(evalkit::expert_policy({"drawer-open"}), {"drawer-open"}, 100, 0);
  CHECK(r.front().success_rate >= 0.90);
  const auto& task = world::find_task("drawer-open");
  CHECK(evalkit::run_plan_with_scripted_skills(plans::manual_plan("drawer-open"), task, 0).success);
}

TEST_CASE("random actions rarely pick and place") {
  const evalkit::RandomPolicy random(0);
  const auto r = evalkit::evaluate(random, {"pick-place"}, 100, 0);
  CHECK(r.front().success_rate < 0.1);
  const auto s = world::reset("pick-place", 0);
  CHECK(random.act("pick-place", s) == random.act("pick-place", s));
}

TEST_CASE("a plan whose conditions never hold runs its last skill") {
  const auto& task = world::find_task("reach");
  plans::ConditionalPlan p{"reach", task.description,
                           {{"the gripper is near the wall and far from the wall", "open the gripper"},
                            {"the gripper is open and closed", "move the gripper to the goal"}}};
  REQUIRE(plans::is_grounded(p, task));
  const auto ep = evalkit::run_plan_with_scripted_skills(p, task, 3);
  CHECK(ep.trajectory.size() == 501);
  CHECK(ep.success);
  p.steps[0].condition = "gripper close to wall";
  CHECK_THROWS_AS(evalkit::run_plan_with_scripted_skills(p, task, 3), skills::PlanError);
}

TEST_CASE("best of plans") {
  const auto& task = world::find_task("door-close");
  const auto candidates = plans::stored_plans(kReplay, task, plans::PlanFormat::kChainPy);
  const auto best = evalkit::best_of_plans(candidates, task, 20, 0);
  REQUIRE(best.rates.size() == candidates.size());
  for (std::size_t i = 0; i < best.rates.size(); ++i) {
    const auto one = evalkit::best_of_plans({candidates[i]}, task, 20, 0);
    CHECK(one.best_rate() == best.rates[i]);
    CHECK(best.rates[i] <= best.best_rate());
  }
}

TEST_CASE("evaluation grid") {
  const auto tasks = world::task_names(world::TaskSet::kFull20);
  const auto expert = evalkit::expert_policy(tasks);
  for (const auto& r : evalkit::evaluate(expert, tasks, 1, 0)) {
    CHECK(r.success_rate == 1.0);
    CHECK(r.seeds == std::vector<std::uint64_t>{0});
  }
  CHECK_THROWS_AS(evalkit::evaluate(expert, tasks, 0, 0), InvalidArgument);

  const evalkit::RandomPolicy random(3);
  const auto ab = evalkit::evaluate(random, {"reach", "push"}, 30, 5, 1);
  const auto ba = evalkit::evaluate(random, {"push", "reach"}, 30, 5, 3);
  CHECK(ab[0].flags == ba[1].flags);
  CHECK(ab[1].flags == ba[0].flags);
  CHECK(ab[0].seeds.front() == 5);
  CHECK(ab[0].seeds.back() == 34);
}

TEST_CASE("cdf") {
  const auto c = evalkit::success_cdf(std::vector<double>{0.0, 1.0, 1.0});
  REQUIRE(c.size() == 3);
  CHECK(c[0].rank == 1);
  CHECK(c[0].value == 1.0);
  CHECK(c[1].value == 1.0);
  CHECK(c[2].rank == 3);
  CHECK(c[2].value == 0.0);
  for (const auto& p : evalkit::success_cdf(std::vector<double>(5, 0.4))) CHECK(p.value == 0.4);
  const auto d = evalkit::success_cdf(std::vector<double>{0.3, 0.9, 0.1, 0.5, 0.5, 0.0});
  for (std::size_t i = 1; i < d.size(); ++i) CHECK(d[i].value <= d[i - 1].value);
}

TEST_CASE("scripted skills cover the base set and part of the rest") {
  const auto tasks = world::task_names(world::TaskSet::kFull20);
  const auto plans = evalkit::select_plans(evalkit::PlanSource::kFixtures, tasks, kReplay, 20, 0);
  const auto results = evalkit::evaluate(evalkit::ScriptedPolicy("skills", plans), tasks, 20, 0);
  const auto cdf = evalkit::success_cdf(results);
  const auto high = std::count_if(cdf.begin(), cdf.end(), [](const auto& p) { return p.value >= 0.9; });
  const auto nonzero = std::count_if(cdf.begin(), cdf.end(), [](const auto& p) { return p.value > 0; });
  CHECK(high >= 10);
  CHECK(nonzero > 10);
}

TEST_CASE("aggregation bands") {
  std::vector<std::vector<evalkit::EvalResult>> runs;
  const std::vector<std::vector<bool>> flags = {
      {true, false, false, false}, {true, true, false, false}, {true, true, true, true}, {false, false, false, false}};
  for (const auto& f : flags) runs.push_back({result("pcbc", "reach", f)});
  const auto rows = evalkit::aggregate(runs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].min == 0.0);
  CHECK(rows[0].max == 1.0);
  CHECK(rows[0].success_rate == (0.25 + 0.5 + 1.0 + 0.0) / 4);
  CHECK(rows[0].n == 4);
  CHECK(rows[0].runs == std::vector<double>{0.25, 0.5, 1.0, 0.0});

  // Rates are exact means of the flags.
  std::vector<bool> many(10000, false);
  for (std::size_t i = 0; i < many.size(); i += 3) many[i] = true;
  const auto r = result("x", "push", many);
  CHECK(r.success_rate == 3334.0 / 10000.0);
}

TEST_CASE("report files") {
  std::vector<std::vector<evalkit::EvalResult>> runs(2);
  for (int k = 0; k < 2; ++k) {
    for (const char* t : {"reach", "push", "door-open"}) {
      runs[static_cast<std::size_t>(k)].push_back(result("pcbc", t, {k == 0, true, false}));
      runs[static_cast<std::size_t>(k)].push_back(result("dc", t, {false, k == 1, false}));
    }
  }
  const auto rows = evalkit::aggregate(runs);
  const fs::path dir = fs::temp_directory_path() / "lw_report_test";
  fs::remove_all(dir);
  const auto files = evalkit::write_report(rows, dir);
  CHECK(files.size() == 3);
  for (const char* f : {"results.csv", "results.json", "cdf.svg"}) CHECK(fs::exists(dir / f));

  const auto csv = slurp(dir / "results.csv");
  CHECK(csv.starts_with("policy,task,n,success_rate,min,max\n"));
  auto from_csv = evalkit::rows_from_csv(csv);
  auto from_json = evalkit::rows_from_json(slurp(dir / "results.json"));
  REQUIRE(from_csv.size() == rows.size());
  REQUIRE(from_json.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(from_json[i] == rows[i]);
    from_json[i].runs.clear();
    CHECK(from_csv[i] == from_json[i]);
  }
  CHECK(evalkit::report_csv(from_csv) == csv);
  CHECK(well_formed(slurp(dir / "cdf.svg")));
  CHECK(evalkit::report_svg(rows) == slurp(dir / "cdf.svg"));
  CHECK_FALSE(well_formed("<svg><g></svg>"));
  fs::remove_all(dir);
}

TEST_CASE("evaluation leaves the model untouched") {
  const auto params = pcbc::PolicyParams::init(2);
  const auto plans = evalkit::select_plans(evalkit::PlanSource::kExpert, {"reach"}, kReplay, 5, 0);
  const evalkit::PcbcAdapter policy(pcbc::PcbcPolicy(params, plans));
  evalkit::evaluate(policy, {"reach"}, 3, 0);
  CHECK(evalkit::PcbcAdapter(pcbc::PcbcPolicy(params, plans)).act("reach", world::reset("reach", 0)) ==
        policy.act("reach", world::reset("reach", 0)));
}
