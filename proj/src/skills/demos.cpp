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

#include "lw/skills/demos.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "lw/world/serialize.hpp"
#include "lw/world/tasks.hpp"

namespace lw::skills {

namespace fs = std::filesystem;
using nlohmann::json;

const TaskDemos* DemoSet::find(const std::string& task) const {
  for (const auto& t : tasks) {
    if (t.task == task) return &t;
  }
  return nullptr;
}

int retry_budget(int n_per_task) { return 3 * n_per_task + 10; }

DemoSet generate_demos(const std::vector<std::string>& tasks, int n_per_task,
                       std::uint64_t seed) {
  if (n_per_task < 1) throw InvalidArgument("n_per_task must be >= 1");
  DemoSet set;
  set.seed = seed;
  set.n_per_task = n_per_task;
  for (const auto& name : tasks) {
    const world::TaskSpec& task = world::find_task(name);
    const ScriptedPlan plan = compile(expert_plan(name), task);
    TaskDemos td;
    td.task = name;
    const int budget = retry_budget(n_per_task);
    for (int attempt = 0; attempt < budget && static_cast<int>(td.demos.size()) < n_per_task;
         ++attempt) {
      const std::uint64_t episode_seed = seed + static_cast<std::uint64_t>(attempt);
      ScriptedRollout r = run_scripted(plan, task, episode_seed);
      td.attempted_seeds.push_back(episode_seed);
      td.attempted_success.push_back(r.demo.success);
      if (r.demo.success) td.demos.push_back(std::move(r.demo));
    }
    if (static_cast<int>(td.demos.size()) < n_per_task) {
      throw DemoError("task '" + name + "': only " + std::to_string(td.demos.size()) + " of " +
                      std::to_string(n_per_task) + " successful demos within " +
                      std::to_string(budget) + " attempts");
    }
    set.tasks.push_back(std::move(td));
  }
  return set;
}

void write_demoset(const DemoSet& set, const std::string& dir) {
  fs::create_directories(dir);
  json manifest = {{"format", "lw-demos"}, {"version", 1}, {"seed", set.seed},
                   {"n_per_task", set.n_per_task}};
  json tasks = json::array();
  for (const auto& td : set.tasks) {
    const std::string path = (fs::path(dir) / (td.task + ".jsonl")).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    json seeds = json::array();
    json flags = json::array();
    for (std::size_t e = 0; e < td.demos.size(); ++e) {
      const Demonstration& d = td.demos[e];
      seeds.push_back(d.seed);
      flags.push_back(d.success);
      for (std::size_t t = 0; t < d.actions.size(); ++t) {
        const json rec = {{"episode", e},
                          {"seed", d.seed},
                          {"t", t},
                          {"obs", world::to_json(d.observations[t])},
                          {"action", world::to_json(d.actions[t])}};
        out << rec.dump() << '\n';
      }
    }
    tasks.push_back({{"task", td.task},
                     {"file", td.task + ".jsonl"},
                     {"seeds", seeds},
                     {"success", flags},
                     {"attempted_seeds", td.attempted_seeds},
                     {"attempted_success", td.attempted_success}});
  }
  manifest["tasks"] = std::move(tasks);
  const std::string mpath = (fs::path(dir) / "demos.json").string();
  std::ofstream m(mpath, std::ios::binary);
  if (!m) throw IoError("cannot write '" + mpath + "'");
  m << manifest.dump(2) << '\n';
}

DemoSet read_demoset(const std::string& dir) {
  const std::string mpath = (fs::path(dir) / "demos.json").string();
  std::ifstream m(mpath);
  if (!m) throw IoError("cannot read '" + mpath + "'");
  json manifest;
  try {
    manifest = json::parse(m);
  } catch (const json::exception& e) {
    throw IoError("malformed demo index: " + std::string(e.what()));
  }
  DemoSet set;
  set.seed = manifest.at("seed").get<std::uint64_t>();
  set.n_per_task = manifest.at("n_per_task").get<int>();
  for (const auto& jt : manifest.at("tasks")) {
    TaskDemos td;
    td.task = jt.at("task").get<std::string>();
    td.attempted_seeds = jt.value("attempted_seeds", std::vector<std::uint64_t>{});
    td.attempted_success = jt.value("attempted_success", std::vector<bool>{});
    const auto flags = jt.at("success").get<std::vector<bool>>();
    const std::string path = (fs::path(dir) / jt.at("file").get<std::string>()).string();
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json rec = json::parse(line);
      const auto e = rec.at("episode").get<std::size_t>();
      while (td.demos.size() <= e) {
        Demonstration d;
        d.task = td.task;
        d.success = td.demos.size() < flags.size() ? flags[td.demos.size()] : false;
        td.demos.push_back(std::move(d));
      }
      Demonstration& d = td.demos[e];
      d.seed = rec.at("seed").get<std::uint64_t>();
      d.observations.push_back(world::observation_from_json(rec.at("obs")));
      d.actions.push_back(world::action_from_json(rec.at("action")));
    }
    set.tasks.push_back(std::move(td));
  }
  return set;
}

}  // namespace lw::skills
