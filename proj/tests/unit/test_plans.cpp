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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "criteria.hpp"
#include "lw/common/hash.hpp"
#include "lw/evalkit/evalkit.hpp"
#include "lw/plans/completion.hpp"
#include "lw/plans/plan.hpp"
#include "lw/query/query.hpp"
#include "lw/skills/skill.hpp"
#include "lw/world/tasks.hpp"
#include "oracles.hpp"

// After Eigen: the resolver header it pulls in defines _res.
#include <httplib.h>

using namespace lw;
using plans::PlanFormat;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = LW_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t count(const std::string& text, const std::string& word) {
  std::size_t n = 0;
  for (auto p = text.find(word); p != std::string::npos; p = text.find(word, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("drawer-open plan as a plain list") {
  const auto plan = plans::manual_plan("drawer-open");
  REQUIRE(plan.steps.size() == 5);
  const auto lines = lines_of(plans::encode_plan(plan, PlanFormat::kPlainList));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "# drawer-open: pull the drawer open");
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(lines[i + 1] == "if " + plan.steps[i].condition + ": " + plan.steps[i].skill);
  }
  CHECK(plan.steps.back().skill == "pull the drawer open");
  CHECK(plan.steps[0].skill == "open the gripper");
}

TEST_CASE("random plans round trip in every format") {
  CounterRng rng(21, 0);
  for (int i = 0; i < 100; ++i) {
    const auto plan = checks::random_plan(rng);
    for (auto f : plans::kAllFormats) {
      CHECK_MESSAGE(plans::decode_plan(plans::encode_plan(plan, f), f) == plan, to_string(f));
    }
  }
}

TEST_CASE("chain structure") {
  for (const auto& [task, plan] : plans::manual_library()) {
    const auto text = plans::encode_plan(plan, PlanFormat::kChainPy);
    CHECK(count(text, "elif ") + 1 == plan.steps.size());
    CHECK(count(text, "    if check(") == 1);
  }
}

TEST_CASE("basic python wraps independent checks in a fence") {
  const auto text = plans::encode_plan(plans::manual_plan("push"), PlanFormat::kBasicPyMd);
  CHECK(text.starts_with("```python"));
  CHECK(count(text, "if check(") == plans::manual_plan("push").steps.size());
  CHECK(count(text, "elif") == 0);
}

TEST_CASE("decoding a commented chain") {
  const auto raw = slurp(kSource / "fixtures/plans/decode/drawer-close.py");
  const auto plan = plans::decode_plan(raw, PlanFormat::kChainPy);
  CHECK(plan.task == "drawer-close");
  CHECK(plan.description == "push the drawer closed");
  REQUIRE(plan.steps.size() == 5);
  CHECK(plan.steps[1] == plans::PlanStep{"the gripper is not near the drawer handle",
                                         "move the gripper above the drawer handle"});
  CHECK(plan.steps[4].skill == "push the drawer closed");
  // Re-encoding gives the same steps back.
  const auto again = plans::decode_plan(plans::encode_plan(plan, PlanFormat::kChainPy), PlanFormat::kChainPy);
  CHECK(again == plan);
  CHECK(plans::ground_plan(plan, world::find_task("drawer-close")) == plan);
}

TEST_CASE("text without steps is rejected") {
  for (auto f : plans::kAllFormats) {
    CHECK_THROWS_AS(plans::decode_plan("# nothing to see\nprint('hello')\n", f), plans::PlanDecodeError);
  }
  try {
    plans::decode_plan("garbage", PlanFormat::kPlainList);
  } catch (const plans::PlanDecodeError& e) {
    CHECK(e.raw_text() == "garbage");
    CHECK(e.kind() == "plan_decode");
  }
}

TEST_CASE("robot calls become descriptions") {
  CHECK(plans::skill_call_to_description("robot.place(\"gripper above puck\")") ==
        "place the gripper above the puck");
  CHECK(plans::skill_call_to_description("robot.close_gripper()") == "close the gripper");
  CHECK(plans::skill_call_to_description("robot.pull(\"drawer open\")") == "pull the drawer open");
  CHECK(plans::description_to_skill_call("open the gripper") == "robot.open_gripper()");
  CHECK(plans::description_to_skill_call("move the gripper above the drawer handle") ==
        "robot.move(\"gripper above drawer handle\")");
  CHECK_THROWS_AS(plans::skill_call_to_description("print(1)"), InvalidArgument);
  for (const auto& d : skills::library_descriptions()) {
    const auto call = plans::description_to_skill_call(d);
    CHECK(plans::skill_call_to_description(call) == d);
    CHECK(plans::skill_call_to_description(call) == plans::skill_call_to_description(call));
  }
}

TEST_CASE("prompt exemplars") {
  const auto lib = plans::manual_library();
  const auto& target = world::find_task("drawer-close");
  const auto ex = plans::prompt_exemplars(target, lib);
  CHECK(std::find(ex.begin(), ex.end(), "pick-place") != ex.end());
  CHECK(std::find(ex.begin(), ex.end(), "drawer-open") != ex.end());
  // Exhaustive argmin over the other base descriptions.
  std::string best;
  std::size_t best_d = SIZE_MAX;
  for (const auto& t : world::list_tasks(world::TaskSet::kBase10)) {
    if (t.name == target.name || t.name == "pick-place") continue;
    const auto d = oracle::levenshtein(target.description, t.description);
    if (d < best_d) best_d = d, best = t.name;
  }
  CHECK(best == "drawer-open");

  const auto prompt = plans::build_prompt(target, PlanFormat::kPlainList, lib);
  CHECK(prompt.find("# drawer-open:") != std::string::npos);
  CHECK(prompt.find("# pick-place:") != std::string::npos);
}

TEST_CASE("a target never sees its own plan") {
  const auto lib = plans::manual_library();
  for (const auto& t : world::all_tasks()) {
    const auto ex = plans::prompt_exemplars(t, lib);
    CHECK(ex.size() == 3);
    CHECK(std::find(ex.begin(), ex.end(), t.name) == ex.end());
    for (auto f : plans::kAllFormats) {
      const auto prompt = plans::build_prompt(t, f, lib);
      const auto header = plans::encode_header(t.name, t.description, f);
      CHECK(prompt.ends_with(header));
      CHECK(count(prompt, "# " + t.name + ":") == 1);
      if (lib.count(t.name)) {
        CHECK(prompt.find(plans::encode_plan(lib.at(t.name), f)) == std::string::npos);
      }
    }
  }
}

TEST_CASE("replay store") {
  const fs::path dir = fs::temp_directory_path() / "lw_replay_test";
  fs::remove_all(dir);
  plans::ReplayBackend store(dir);
  plans::CompletionRequest r;
  r.prompt = "some prompt";
  CHECK_THROWS_AS(store.complete(r), plans::MissingFixture);
  std::set<std::string> names;
  for (int k = 0; k < plans::kSamplesPerPrompt; ++k) {
    r.sample = k;
    const std::string text = "completion \xe2\x9c\x93 " + std::to_string(k) + "\r\n";
    const auto path = store.store(r, text);
    CHECK(path.filename() == plans::fixture_name(r.prompt, k));
    names.insert(path.filename().string());
    CHECK(store.complete(r).text == text);
  }
  CHECK(names.size() == 4);
  CHECK(plans::fixture_name("some prompt", 2) == to_hex(fnv1a64("some prompt")) + "-2.txt");
  fs::remove_all(dir);
}

TEST_CASE("stored completions match the checked-in plan texts") {
  const auto lib = plans::manual_library();
  plans::ReplayBackend replay(kSource / "fixtures/replay");
  for (const auto& t : world::list_tasks(world::TaskSet::kFull20)) {
    if (t.base) continue;
    plans::CompletionRequest r;
    r.prompt = plans::build_prompt(t, PlanFormat::kChainPy, lib);
    for (int k = 0; k < plans::kSamplesPerPrompt; ++k) {
      r.sample = k;
      const auto file = kSource / "fixtures/plans/heldout" / (t.name + "." + std::to_string(k) + ".py");
      CHECK_MESSAGE(replay.complete(r).text == slurp(file), file.string());
    }
    CHECK(plans::stored_plans(kSource / "fixtures/replay", t, PlanFormat::kChainPy).size() == 4);
  }
}

TEST_CASE("grounding") {
  const auto& task = world::find_task("drawer-open");
  const auto canonical = plans::manual_plan("drawer-open");
  CHECK(plans::ground_plan(canonical, task) == canonical);
  CHECK(plans::is_grounded(canonical, task));

  auto loose = canonical;
  loose.steps[0].condition = "gripper closed and not near drawer handle";
  loose.steps[1].condition = "the gripper not near the drawer handle";
  loose.steps[2].condition = "the gripper above the drawer handle";
  loose.steps[3].skill = "close gripper";
  loose.steps[4].skill = "pull drawer open";
  CHECK_FALSE(plans::is_grounded(loose, task));
  const auto g = plans::ground_plan(loose, task);
  CHECK(g == canonical);
  CHECK(plans::ground_plan(g, task) == g);
  CHECK_NOTHROW(plans::to_scripted(g, task));
  CHECK_THROWS_AS(plans::to_scripted(loose, task), skills::PlanError);
}

TEST_CASE("plan json") {
  const auto p = plans::manual_plan("peg-insert");
  CHECK(plans::plan_from_json(plans::to_json(p)) == p);
  CHECK_THROWS_AS(plans::plan_from_json(nlohmann::json{{"task", 3}}), InvalidArgument);
}

TEST_CASE("http completion") {
  httplib::Server server;
  std::string auth, body;
  server.Post("/v1/complete", [&](const httplib::Request& req, httplib::Response& res) {
    auth = req.get_header_value("Authorization");
    body = req.body;
    res.set_content(R"({"completion": "    if check(\"the gripper is open\"):\n        robot.close_gripper()\n"})",
                    "application/json");
  });
  server.Post("/fail", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("LW_TEST_KEY", "s3cret", 1);
  const fs::path log = fs::temp_directory_path() / "lw_http_log";
  fs::remove_all(log);
  plans::HttpConfig cfg;
  cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/complete";
  cfg.api_key_env = "LW_TEST_KEY";
  cfg.log_dir = log;
  plans::CompletionRequest r;
  r.prompt = "prompt text";
  r.sample = 1;
  const auto result = plans::HttpBackend(cfg).complete(r);
  CHECK(auth == "Bearer s3cret");
  const auto sent = nlohmann::json::parse(body);
  CHECK(sent["prompt"] == "prompt text");
  CHECK(sent["temperature"] == plans::kDefaultTemperature);
  CHECK(sent["max_tokens"] == plans::kDefaultMaxTokens);
  CHECK(result.text.find("robot.close_gripper()") != std::string::npos);
  // Logged completions replay byte for byte, and the key is not written.
  CHECK(plans::ReplayBackend(log).complete(r).text == result.text);
  for (const auto& e : fs::directory_iterator(log)) CHECK(slurp(e.path()).find("s3cret") == std::string::npos);

  cfg.url = "http://127.0.0.1:" + std::to_string(port) + "/fail";
  CHECK_THROWS_AS(plans::HttpBackend(cfg).complete(r), plans::HttpStatusError);
  cfg.api_key_env = "LW_TEST_KEY_UNSET";
  ::unsetenv("LW_TEST_KEY_UNSET");
  CHECK_THROWS_AS(plans::HttpBackend(cfg).complete(r), InvalidArgument);
  cfg.url = "https://example.invalid/x";
  CHECK_THROWS_AS(plans::HttpBackend(cfg).complete(r), InvalidArgument);

  server.stop();
  th.join();
  fs::remove_all(log);
}

TEST_CASE("stored held-out plans work with scripted skills") {
  int hits = 0;
  for (const auto& t : world::list_tasks(world::TaskSet::kFull20)) {
    if (t.base) continue;
    const auto best = evalkit::best_of_plans(
        plans::stored_plans(kSource / "fixtures/replay", t, PlanFormat::kChainPy), t, 20, 0);
    CHECK(best.rates.size() == 4);
    CHECK(best.best_rate() == *std::max_element(best.rates.begin(), best.rates.end()));
    hits += best.best_rate() >= 0.5 ? 1 : 0;
  }
  CHECK(hits >= 3);
}
