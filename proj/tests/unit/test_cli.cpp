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

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kReplay = (fs::path(LW_SOURCE_DIR) / "fixtures/replay").string();

struct Run {
  int code;
  std::string out, err;
};

Run lw_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("lw_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& rel) const { return (dir / rel).string(); }
  std::string write(const std::string& rel, const std::string& text) const {
    std::ofstream(dir / rel, std::ios::binary) << text;
    return (dir / rel).string();
  }
};

}  // namespace

TEST_CASE("tasks list") {
  auto r = lw_run({"tasks", "list", "--set", "base"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 10);
  r = lw_run({"tasks", "list"});
  CHECK(lines(r.out).size() == 20);
  r = lw_run({"tasks", "list", "--set", "base", "--json"});
  CHECK(json::parse(r.out).at("tasks").size() == 10);
}

TEST_CASE("exit codes") {
  auto r = lw_run({"frobnicate"});
  CHECK(r.code == 2);
  r = lw_run({"tasks", "list", "--set", "medium"});
  CHECK(r.code == 2);
  r = lw_run({"query", "eval", "--task", "nope", "--query", "the gripper is open"});
  CHECK(r.code == 1);
  CHECK(lines(r.err).size() == 1);
  CHECK(r.err.starts_with("error: "));
  r = lw_run({"query", "eval", "--task", "reach", "--query", "the gripper is sideways"});
  CHECK(r.code == 1);
  CHECK(r.err.find("nearest supported phrase") != std::string::npos);
  r = lw_run({"eval", "--policy", "pcbc", "--tasks", "reach"});
  CHECK(r.code == 1);
}

TEST_CASE("query commands") {
  auto r = lw_run({"query", "eval", "--task", "reach", "--query", "the gripper is open"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = lw_run({"query", "eval", "--task", "reach", "--query", "The gripper is open and closed"});
  CHECK(r.out == "false\n");

  r = lw_run({"query", "list", "--task", "drawer-open"});
  CHECK(r.code == 0);
  // gripper, drawer, drawer handle, table, wall, goal
  CHECK(lines(r.out).size() == (13 * 6 * 5 + 2) * 2);
  r = lw_run({"query", "nearest", "--task", "drawer-open", "Gripper nere the drawer handel"});
  CHECK(r.code == 0);
  CHECK(r.out == "the gripper is near the drawer handle\n");
}

TEST_CASE("query eval on a stored state") {
  Scratch s("state");
  const auto bad = s.write("bad.json", "{not json");
  auto r = lw_run({"query", "eval", "--task", "reach", "--query", "the gripper is open", "--state", bad});
  CHECK(r.code == 1);
  r = lw_run({"query", "eval", "--task", "reach", "--query", "the gripper is open", "--state", s / "missing.json"});
  CHECK(r.code == 1);
}

TEST_CASE("plan commands") {
  Scratch s("plan");
  auto r = lw_run({"plan", "encode", "--task", "drawer-open", "--format", "plain_list"});
  REQUIRE(r.code == 0);
  const auto text = s.write("p.txt", r.out);
  r = lw_run({"plan", "decode", "--in", text, "--format", "plain_list"});
  REQUIRE(r.code == 0);
  const auto plan = json::parse(r.out);
  CHECK(plan.at("steps").size() >= 2);
  const auto pj = s.write("p.json", r.out);
  r = lw_run({"plan", "encode", "--in", pj, "--format", "plain_list"});
  CHECK(r.out == slurp(text));

  r = lw_run({"plan", "ground", "--in", text, "--task", "drawer-open", "--format", "plain_list"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(text));

  r = lw_run({"plan", "prompt", "--task", "door-close"});
  CHECK(r.code == 0);
  CHECK(r.out.find("door-close") != std::string::npos);
  CHECK(r.out.find("def drawer_close(robot):") != std::string::npos);
  CHECK(r.out.find("def door_close(robot):") != std::string::npos);

  r = lw_run({"plan", "decode", "--in", s / "none.txt"});
  CHECK(r.code == 1);
}

TEST_CASE("llm replay and import") {
  Scratch s("llm");
  auto r = lw_run({"llm", "complete", "--task", "door-close", "--sample", "1", "--store", kReplay});
  REQUIRE(r.code == 0);
  CHECK_FALSE(r.out.empty());
  const auto completion = s.write("c.py", r.out);
  r = lw_run({"llm", "complete", "--task", "door-close", "--sample", "1", "--store", s / "store"});
  CHECK(r.code == 1);
  r = lw_run({"llm", "import", "--task", "door-close", "--sample", "1", "--file", completion, "--store",
              s / "store"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(lines(r.out).front()));
  r = lw_run({"llm", "complete", "--task", "door-close", "--sample", "1", "--store", s / "store"});
  CHECK(r.code == 0);
  CHECK(r.out == slurp(completion));

  const auto junk = s.write("junk.txt", "no plan here");
  r = lw_run({"llm", "import", "--task", "door-close", "--file", junk, "--store", s / "store"});
  CHECK(r.code == 1);

  // No url configured.
  ::unsetenv("LW_LLM_API_KEY");
  r = lw_run({"llm", "complete", "--task", "door-close", "--backend", "http"});
  CHECK(r.code == 1);
}

TEST_CASE("scripted evaluation on the base set") {
  Scratch s("eval");
  auto r = lw_run({"--out", s / "", "--jobs", "2", "eval", "--policy", "scripted", "--tasks", "base",
                   "--episodes", "100"});
  REQUIRE(r.code == 0);
  const fs::path csv = lines(r.out).front();
  REQUIRE(fs::exists(csv));
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 11);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> f;
    std::istringstream ls(rows[i]);
    for (std::string c; std::getline(ls, c, ',');) f.push_back(c);
    REQUIRE(f.size() == 6);
    CHECK(f[2] == "100");
    CHECK(std::stod(f[3]) >= 0.90);
  }
  const auto manifest = json::parse(slurp(csv.parent_path() / "manifest.json"));
  CHECK(manifest.at("format") == "lw-run");
  CHECK(manifest.at("command") == "eval");
  CHECK(manifest.at("outputs").size() == 3);
  CHECK(manifest.at("config_hash") == csv.parent_path().filename().string());
  for (const auto& o : manifest.at("outputs")) CHECK(o.at("digest").is_string());

  // report merges runs.
  const auto merged = s / "merged";
  r = lw_run({"--out", merged, "report", "--in", (csv.parent_path() / "results.json").string(), "--in",
              (csv.parent_path() / "results.json").string()});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(slurp(fs::path(merged) / "results.json"));
  CHECK(doc.at("rows").size() == 10);
  CHECK(doc.at("rows")[0].at("runs").size() == 2);
}

TEST_CASE("one-shot training writes one model per task") {
  Scratch s("train");
  const auto cfg = s.write("cfg.json", json{{"train", {{"steps", 20}, {"batch_size", 20}}},
                                            {"data", {{"mode", "one_shot"}, {"demos_per_task", 2}}},
                                            {"eval", {{"episodes", 2}}},
                                            {"plans", {{"source", "fixtures"}, {"replay_dir", kReplay}}}}
                                           .dump());
  auto r = lw_run({"--config", cfg, "--out", s / "demos", "demos", "generate"});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(s / "demos/manifest.json"));
  r = lw_run({"--config", cfg, "--out", s / "models", "train", "--arch", "pcbc", "--demos", s / "demos"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  int ckpts = 0;
  for (const auto& e : fs::directory_iterator(s / "models")) ckpts += e.path().string().ends_with(".ckpt.json");
  CHECK(ckpts == 20);
  const auto manifest = json::parse(slurp(s / "models/manifest.json"));
  CHECK(manifest.at("outputs").size() == 40);
  CHECK(manifest.at("seeds").contains("train_seed"));
  CHECK_FALSE(manifest.at("inputs").empty());

  r = lw_run({"--config", cfg, "--out", s / "res", "eval", "--policy", "pcbc", "--tasks", "reach,push",
              "--models", s / "models", "--episodes", "2"});
  CHECK(r.code == 0);
  r = lw_run({"--config", cfg, "--out", s / "res", "eval", "--policy", "dc", "--tasks", "reach",
              "--checkpoint", s / "models/reach.ckpt.json"});
  CHECK(r.code == 1);
}

TEST_CASE("config validation") {
  Scratch s("cfg");
  auto r = lw_run({"--config", s.write("b.json", R"({"trian": {}})"), "eval", "--tasks", "reach"});
  CHECK(r.code == 1);
  CHECK(r.err.find("trian") != std::string::npos);
  r = lw_run({"--config", s.write("c.json", R"({"train": {"stepz": 3}})"), "eval", "--tasks", "reach"});
  CHECK(r.code == 1);
  r = lw_run({"--config", s.write("d.json", R"({"eval": {"episodes": 0}})"), "eval", "--tasks", "reach"});
  CHECK(r.code == 1);
  r = lw_run({"--config", s / "missing.json", "eval", "--tasks", "reach"});
  CHECK(r.code == 1);
}
