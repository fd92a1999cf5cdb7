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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "criteria.hpp"
#include "lw/common/error.hpp"
#include "lw/common/hash.hpp"
#include "lw/evalkit/evalkit.hpp"
#include "lw/pcbc/checkpoint.hpp"
#include "lw/plans/completion.hpp"
#include "lw/plans/plan.hpp"
#include "lw/query/query.hpp"
#include "lw/skills/demos.hpp"
#include "lw/training/training.hpp"
#include "lw/world/serialize.hpp"
#include "lw/world/world.hpp"

namespace lw::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

#ifndef LW_SOURCE_DIR
#define LW_SOURCE_DIR "."
#endif

const char* kDefaultReplayDir = LW_SOURCE_DIR "/fixtures/replay";

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

// Everything that can change results. Flags only choose what to run.
struct Config {
  training::TrainConfig train;
  training::DataConfig data = training::DataConfig::few_shot();
  bool data_given = false;
  int episodes = evalkit::kDefaultEpisodes;
  std::uint64_t eval_seed0 = 0;
  std::uint64_t demo_seed = training::kDefaultDemoSeed;
  evalkit::PlanSource plan_source = evalkit::PlanSource::kFixtures;
  std::string replay_dir = kDefaultReplayDir;
  plans::HttpConfig http;
  double temperature = plans::kDefaultTemperature;
  int max_tokens = plans::kDefaultMaxTokens;

  json to_json() const {
    json j = {{"train", training::to_json(train)},
              {"data", training::to_json(data)},
              {"eval", {{"episodes", episodes}, {"seed0", eval_seed0}}},
              {"demos", {{"seed", demo_seed}}},
              {"plans", {{"source", evalkit::to_string(plan_source)}}},
              {"llm", {{"url", http.url}, {"api_key_env", http.api_key_env},
                       {"timeout_seconds", http.timeout_seconds}, {"temperature", temperature},
                       {"max_tokens", max_tokens}}}};
    return j;
  }
};

void check_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
      throw ConfigError("unknown key '" + k + "' in " + where);
    }
  }
}

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  json doc;
  try {
    in >> doc;
    check_keys(doc, {"train", "data", "eval", "demos", "plans", "llm"}, "config");
    if (doc.contains("train")) c.train = training::train_config_from_json(doc["train"]);
    if (doc.contains("data")) {
      c.data = training::data_config_from_json(doc["data"]);
      c.data_given = true;
    }
    if (doc.contains("eval")) {
      check_keys(doc["eval"], {"episodes", "seed0"}, "eval");
      c.episodes = doc["eval"].value("episodes", c.episodes);
      c.eval_seed0 = doc["eval"].value("seed0", c.eval_seed0);
    }
    if (doc.contains("demos")) {
      check_keys(doc["demos"], {"seed"}, "demos");
      c.demo_seed = doc["demos"].value("seed", c.demo_seed);
    }
    if (doc.contains("plans")) {
      check_keys(doc["plans"], {"source", "replay_dir"}, "plans");
      c.plan_source = evalkit::parse_plan_source(doc["plans"].value("source", "fixtures"));
      c.replay_dir = doc["plans"].value("replay_dir", c.replay_dir);
    }
    if (doc.contains("llm")) {
      const auto& l = doc["llm"];
      check_keys(l, {"url", "api_key_env", "timeout_seconds", "temperature", "max_tokens"}, "llm");
      c.http.url = l.value("url", c.http.url);
      c.http.api_key_env = l.value("api_key_env", c.http.api_key_env);
      c.http.timeout_seconds = l.value("timeout_seconds", c.http.timeout_seconds);
      c.temperature = l.value("temperature", c.temperature);
      c.max_tokens = l.value("max_tokens", c.max_tokens);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config ") + path + ": " + e.what());
  }
  if (c.episodes < 1) throw ConfigError("eval.episodes must be at least 1");
  return c;
}

std::vector<std::string> resolve_tasks(const std::string& spec) {
  if (spec == "base" || spec == "full" || spec == "base10" || spec == "full20") {
    return world::task_names(world::parse_task_set(spec));
  }
  if (spec == "heldout") {
    const auto base = world::task_names(world::TaskSet::kBase10);
    std::vector<std::string> out;
    for (const auto& n : world::task_names(world::TaskSet::kFull20)) {
      if (std::find(base.begin(), base.end(), n) == base.end()) out.push_back(n);
    }
    return out;
  }
  std::vector<std::string> out;
  std::istringstream in(spec);
  for (std::string name; std::getline(in, name, ',');) {
    if (name.empty()) continue;
    world::find_task(name);
    out.push_back(name);
  }
  if (out.empty()) throw InvalidArgument("no tasks selected by '" + spec + "'");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

// Provenance of one run: written last, lists every artifact in `dir`.
struct Manifest {
  Manifest(std::string cmd, json cfg) : command(std::move(cmd)), config(std::move(cfg)) {}

  std::string command;
  json config;
  json seeds = json::object();
  std::vector<std::string> inputs;
  // Files whose bytes vary between identical runs (wall-clock columns).
  std::vector<std::string> volatile_outputs;

  std::string config_hash() const { return to_hex(fnv1a64(json{{"command", command}, {"config", config}}.dump())); }

  void write(const fs::path& dir) const {
    json in = json::array();
    for (const auto& p : inputs) in.push_back({{"path", p}, {"digest", file_digest(p)}});
    std::vector<std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
      if (!e.is_regular_file()) continue;
      const auto rel = fs::relative(e.path(), dir).generic_string();
      if (rel != "manifest.json") files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    json out = json::array();
    for (const auto& f : files) {
      const bool vol = std::find(volatile_outputs.begin(), volatile_outputs.end(), f) != volatile_outputs.end();
      out.push_back({{"path", f}, {"digest", vol ? json(nullptr) : json(file_digest((dir / f).string()))}});
    }
    const json doc = {{"format", "lw-run"},
                      {"tool_version", LW_VERSION},
                      {"command", command},
                      {"config_hash", config_hash()},
                      {"config", config},
                      {"seeds", seeds},
                      {"inputs", in},
                      {"outputs", out}};
    write_file(dir / "manifest.json", doc.dump(2) + "\n");
  }
};

// Demo directories are inputs by their index and data files.
std::vector<std::string> demo_inputs(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename() != "manifest.json") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Policy that dispatches each task to its own one-shot model.
class PerTaskPolicy : public evalkit::Policy {
 public:
  explicit PerTaskPolicy(std::string id) : id_(std::move(id)) {}
  void add(const std::string& task, std::unique_ptr<evalkit::Policy> p) { by_task_[task] = std::move(p); }
  std::string id() const override { return id_; }
  world::Action act(const std::string& task, const world::WorldState& state) const override {
    auto it = by_task_.find(task);
    if (it == by_task_.end()) throw NotFound("no model for task " + task);
    return it->second->act(task, state);
  }

 private:
  std::string id_;
  std::map<std::string, std::unique_ptr<evalkit::Policy>> by_task_;
};

std::unique_ptr<evalkit::Policy> policy_from_checkpoint(const pcbc::Checkpoint& ckpt,
                                                        const std::vector<std::string>& tasks,
                                                        const Config& cfg, const std::string& id) {
  if (ckpt.arch == pcbc::Arch::kDc) {
    return std::make_unique<evalkit::DcAdapter>(pcbc::DcPolicy(ckpt.params), id);
  }
  auto plans = evalkit::select_plans(cfg.plan_source, tasks, cfg.replay_dir, cfg.episodes, cfg.eval_seed0);
  return std::make_unique<evalkit::PcbcAdapter>(pcbc::PcbcPolicy(ckpt.params, std::move(plans)), id);
}

training::DataConfig for_mode(const std::string& mode) {
  training::DataConfig d;
  d.mode = training::parse_data_mode(mode);
  d.demos_per_task = d.mode == training::DataMode::kFewShot ? 10 : 100;
  return d;
}

struct Globals {
  std::uint64_t seed = 0;
  std::string config;
  std::string out = "out";
  int jobs = 1;
};

struct App {
  App(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  Globals g;
  Config cfg;

  // tasks list
  std::string set = "full";
  bool as_json = false;
  // shared
  std::string task, format = "chain_py", in_path, text, tasks_spec, arch = "pcbc", data_mode;
  std::string target, policy = "scripted", checkpoint, models_dir, demos_dir, backend = "replay";
  std::string store;
  std::vector<std::string> inputs;
  int n = -1, sample = 0, episodes = -1;
  bool log_completions = false, full = false;

  void tasks_list() {
    const auto ts = world::parse_task_set(set);
    if (as_json) {
      out << world::registry_json(ts).dump(2) << "\n";
      return;
    }
    for (const auto& t : world::list_tasks(ts)) out << t.name << "\t" << t.description << "\n";
  }

  void demos_generate() {
    const std::uint64_t seed = cfg.demo_seed + g.seed;
    skills::DemoSet set_;
    Manifest m{"demos generate", cfg.to_json()};
    if (!tasks_spec.empty()) {
      const int count = n > 0 ? n : 10;
      set_ = skills::generate_demos(resolve_tasks(tasks_spec), count, seed);
      m.config["request"] = {{"tasks", tasks_spec}, {"n", count}};
    } else {
      training::DataConfig data = data_mode.empty() ? cfg.data : for_mode(data_mode);
      if (n > 0) data.demos_per_task = n;
      set_ = training::demos_for(data, seed);
      m.config["request"] = {{"data", to_string(data.mode)}, {"n", data.demos_per_task}};
    }
    set_.n_per_task = 0;
    for (const auto& t : set_.tasks) set_.n_per_task = std::max<int>(set_.n_per_task, static_cast<int>(t.demos.size()));
    skills::write_demoset(set_, g.out);
    m.seeds = {{"demo_seed", seed}};
    m.write(g.out);
    out << "wrote " << set_.tasks.size() << " tasks to " << g.out << "\n";
  }

  world::WorldState query_state(const world::TaskSpec& spec) {
    if (in_path.empty()) return world::reset(spec, g.seed);
    try {
      return world::state_from_json(json::parse(read_file(in_path)));
    } catch (const json::exception& e) {
      throw InvalidArgument("malformed state file " + in_path + ": " + e.what());
    }
  }

  void query_eval() {
    const auto& spec = world::find_task(task);
    const auto q = query::parse_query(text, spec);
    out << (query::eval_query(q, query_state(spec)) ? "true" : "false") << "\n";
  }

  void query_list() {
    for (const auto& s : query::supported_queries(world::find_task(task))) out << s << "\n";
  }

  void query_nearest() { out << query::nearest_query(text, world::find_task(task)) << "\n"; }

  plans::ConditionalPlan input_plan(const plans::PlanFormat f) {
    const std::string raw = read_file(in_path);
    if (!task.empty()) return plans::decode_completion(raw, world::find_task(task), f);
    return plans::decode_plan(raw, f);
  }

  void plan_encode() {
    const auto f = plans::parse_plan_format(format);
    plans::ConditionalPlan p;
    if (in_path.empty()) {
      if (task.empty()) throw InvalidArgument("plan encode needs --task or --in");
      p = plans::manual_plan(task);
    } else {
      try {
        p = plans::plan_from_json(json::parse(read_file(in_path)));
      } catch (const json::exception& e) {
        throw InvalidArgument("malformed plan file " + in_path + ": " + e.what());
      }
    }
    out << plans::encode_plan(p, f);
  }

  void plan_decode() { out << plans::to_json(input_plan(plans::parse_plan_format(format))).dump(2) << "\n"; }

  void plan_ground() {
    const auto f = plans::parse_plan_format(format);
    const auto& spec = world::find_task(task);
    out << plans::encode_plan(plans::ground_plan(input_plan(f), spec), f);
  }

  void plan_prompt() {
    out << plans::build_prompt(world::find_task(task), plans::parse_plan_format(format),
                               plans::manual_library());
  }

  plans::CompletionRequest request() const {
    plans::CompletionRequest r;
    r.prompt = plans::build_prompt(world::find_task(task), plans::parse_plan_format(format),
                                   plans::manual_library());
    r.temperature = cfg.temperature;
    r.max_tokens = cfg.max_tokens;
    r.sample = sample;
    return r;
  }

  void llm_complete() {
    const std::string dir = store.empty() ? cfg.replay_dir : store;
    if (backend == "replay") {
      plans::ReplayBackend b(dir);
      out << b.complete(request()).text;
      return;
    }
    if (backend != "http") throw InvalidArgument("unknown backend " + backend + " (expected replay or http)");
    plans::HttpConfig h = cfg.http;
    if (h.url.empty()) throw ConfigError("llm.url is not configured");
    if (log_completions) h.log_dir = dir;
    plans::HttpBackend b(h);
    out << b.complete(request()).text;
  }

  void llm_import() {
    const std::string dir = store.empty() ? cfg.replay_dir : store;
    const auto text_ = read_file(in_path);
    // Refuse completions the decoder cannot read at all.
    plans::decode_completion(text_, world::find_task(task), plans::parse_plan_format(format));
    out << plans::ReplayBackend(dir).store(request(), text_).string() << "\n";
  }

  void train() {
    const auto a = pcbc::parse_arch(arch);
    training::TrainConfig tc = cfg.train;
    tc.seed = g.seed;
    training::DataConfig data = data_mode.empty() ? cfg.data : for_mode(data_mode);
    if (!target.empty()) data.target = target;
    if (demos_dir.empty()) throw InvalidArgument("train needs --demos");
    const auto demos = skills::read_demoset(demos_dir);

    std::vector<std::string> targets;
    if (data.mode == training::DataMode::kOneShot && data.target.empty()) {
      targets = world::task_names(world::TaskSet::kFull20);
    } else {
      targets.push_back(data.target);
    }
    // Plans cover every task a model may be conditioned on.
    std::map<std::string, skills::ScriptedPlan> plan_map;
    if (a == pcbc::Arch::kPcbc) {
      plan_map = evalkit::select_plans(cfg.plan_source, world::task_names(world::TaskSet::kFull20),
                                       cfg.replay_dir, cfg.episodes, cfg.eval_seed0);
    }

    Manifest m{"train", cfg.to_json()};
    m.config["request"] = {{"arch", arch}, {"data", training::to_json(data)}};
    m.seeds = {{"train_seed", tc.seed}, {"demo_seed", demos.seed}};
    m.inputs = demo_inputs(demos_dir);
    fs::create_directories(g.out);

    std::vector<std::exception_ptr> errors(targets.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < targets.size(); i = next++) {
        try {
          training::DataConfig d = data;
          d.target = targets[i];
          const std::string stem = d.target.empty() ? "model" : d.target;
          std::ostringstream log;
          auto result = training::train(tc, d, a, demos, plan_map, &log);
          result.checkpoint.meta["plans"] = evalkit::to_string(cfg.plan_source);
          pcbc::save_checkpoint(fs::path(g.out) / (stem + ".ckpt.json"), result.checkpoint);
          write_file(fs::path(g.out) / (stem + ".train_log.csv"), log.str());
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const int workers = std::max(1, std::min<int>(g.jobs, static_cast<int>(targets.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& t : targets) {
      m.volatile_outputs.push_back((t.empty() ? std::string("model") : t) + ".train_log.csv");
    }
    m.write(g.out);
    out << "wrote " << targets.size() << " checkpoint" << (targets.size() == 1 ? "" : "s") << " to "
        << g.out << "\n";
  }

  void eval() {
    const int eps = episodes > 0 ? episodes : cfg.episodes;
    const auto tasks = resolve_tasks(tasks_spec.empty() ? (policy == "plans" ? "heldout" : "full") : tasks_spec);
    Config c = cfg;
    c.episodes = eps;
    Manifest m{"eval", cfg.to_json()};
    m.config["request"] = {{"policy", policy}, {"tasks", tasks}, {"episodes", eps}};
    m.seeds = {{"eval_seed0", cfg.eval_seed0}, {"seed", g.seed}};

    std::vector<std::vector<evalkit::EvalResult>> runs;
    if (policy == "plans") {
      // Each stored completion is one run; the band is the spread over plans.
      runs.resize(plans::kSamplesPerPrompt);
      for (const auto& name : tasks) {
        const auto& spec = world::find_task(name);
        const auto candidates = plans::stored_plans(cfg.replay_dir, spec, plans::PlanFormat::kChainPy);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
          evalkit::ScriptedPolicy p("plans", {{name, plans::to_scripted(plans::ground_plan(candidates[k], spec), spec)}});
          auto r = evalkit::evaluate(p, {name}, eps, cfg.eval_seed0, g.jobs);
          runs[k].push_back(r.front());
        }
      }
    } else {
      std::unique_ptr<evalkit::Policy> p;
      if (policy == "scripted") {
        p = std::make_unique<evalkit::ScriptedPolicy>(evalkit::expert_policy(tasks));
      } else if (policy == "random") {
        p = std::make_unique<evalkit::RandomPolicy>(g.seed);
      } else if (policy == "pcbc" || policy == "dc") {
        if (!checkpoint.empty()) {
          const auto ckpt = pcbc::load_checkpoint(checkpoint);
          if (pcbc::to_string(ckpt.arch) != policy) {
            throw InvalidArgument("checkpoint " + checkpoint + " holds a " + pcbc::to_string(ckpt.arch) + " model");
          }
          m.inputs.push_back(checkpoint);
          p = policy_from_checkpoint(ckpt, tasks, c, policy);
        } else if (!models_dir.empty()) {
          auto per = std::make_unique<PerTaskPolicy>(policy);
          for (const auto& name : tasks) {
            const auto path = (fs::path(models_dir) / (name + ".ckpt.json")).string();
            const auto ckpt = pcbc::load_checkpoint(path);
            if (pcbc::to_string(ckpt.arch) != policy) {
              throw InvalidArgument("checkpoint " + path + " holds a " + pcbc::to_string(ckpt.arch) + " model");
            }
            m.inputs.push_back(path);
            per->add(name, policy_from_checkpoint(ckpt, {name}, c, policy));
          }
          p = std::move(per);
        } else {
          throw InvalidArgument("--policy " + policy + " needs --checkpoint or --models");
        }
      } else {
        throw InvalidArgument("unknown policy " + policy + " (expected scripted, random, pcbc, dc or plans)");
      }
      runs.push_back(evalkit::evaluate(*p, tasks, eps, cfg.eval_seed0, g.jobs));
    }
    const auto rows = evalkit::aggregate(runs);
    const fs::path dir = fs::path(g.out) / "results" / m.config_hash();
    if (fs::exists(dir)) fs::remove_all(dir);
    evalkit::write_report(rows, dir);
    m.write(dir);
    out << (dir / "results.csv").string() << "\n";
  }

  void report() {
    if (inputs.empty()) throw InvalidArgument("report needs at least one --in results.json");
    std::vector<std::vector<evalkit::EvalResult>> runs;
    Manifest m{"report", cfg.to_json()};
    m.inputs = inputs;
    std::vector<evalkit::ReportRow> merged;
    for (const auto& path : inputs) {
      for (const auto& row : evalkit::rows_from_json(read_file(path))) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const evalkit::ReportRow& r) {
          return r.policy == row.policy && r.task == row.task;
        });
        const auto runs_ = row.runs.empty() ? std::vector<double>{row.success_rate} : row.runs;
        if (it == merged.end()) {
          merged.push_back(row);
          merged.back().runs = runs_;
        } else {
          if (it->n != row.n) throw InvalidArgument("episode counts differ for " + row.policy + "/" + row.task);
          it->runs.insert(it->runs.end(), runs_.begin(), runs_.end());
        }
      }
    }
    for (auto& r : merged) {
      double sum = 0;
      for (double v : r.runs) sum += v;
      r.success_rate = sum / static_cast<double>(r.runs.size());
      r.min = *std::min_element(r.runs.begin(), r.runs.end());
      r.max = *std::max_element(r.runs.begin(), r.runs.end());
    }
    evalkit::write_report(merged, g.out);
    m.write(g.out);
    out << (fs::path(g.out) / "results.csv").string() << "\n";
  }

  int selfcheck() {
    checks::Options o;
    o.replay_dir = cfg.replay_dir;
    o.jobs = g.jobs;
    o.scratch = fs::path(g.out) / "selfcheck";
    o.cli = [](const std::vector<std::string>& args) {
      std::ostringstream sink;
      return run(args, sink, sink);
    };
    const auto ids = full ? checks::all_criteria() : checks::quick_criteria();
    bool ok = true;
    for (int id : ids) {
      const auto r = checks::run_criterion(id, o);
      out << checks::format_line(r) << "\n";
      out.flush();
      ok = ok && r.passed;
    }
    return ok ? 0 : 1;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lw: language-world plan-conditioned behavioral cloning toolkit", "lw"};
  app.require_subcommand(1);
  App a(out, err);
  app.add_option("--seed", a.g.seed, "run seed");
  app.add_option("--config", a.g.config, "JSON config file");
  app.add_option("--out", a.g.out, "output directory");
  app.add_option("--jobs", a.g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", std::string(LW_VERSION));

  int code = 0;
  std::function<void()> action;
  app.failure_message(CLI::FailureMessage::help);
  auto* tasks = app.add_subcommand("tasks", "task registry")->require_subcommand(1);
  auto* tl = tasks->add_subcommand("list", "list tasks");
  tl->add_option("--set", a.set, "base or full")->check(CLI::IsMember({"base", "full", "base10", "full20"}));
  tl->add_flag("--json", a.as_json, "registry as JSON");
  tl->callback([&] { action = [&] { a.tasks_list(); }; });

  auto* demos = app.add_subcommand("demos", "demonstrations")->require_subcommand(1);
  auto* dg = demos->add_subcommand("generate", "run the experts and store successful episodes");
  dg->add_option("--data", a.data_mode, "zero_shot, few_shot or one_shot")
      ->check(CLI::IsMember({"zero_shot", "few_shot", "one_shot"}));
  dg->add_option("--tasks", a.tasks_spec, "base, full, heldout or a comma list");
  dg->add_option("--n", a.n, "demos per task")->check(CLI::PositiveNumber);
  dg->callback([&] { action = [&] { a.demos_generate(); }; });

  auto* query = app.add_subcommand("query", "query answering")->require_subcommand(1);
  auto* qe = query->add_subcommand("eval", "evaluate a query on a state");
  qe->add_option("--task", a.task)->required();
  qe->add_option("--query", a.text, "query sentence")->required();
  qe->add_option("--state", a.in_path, "WorldState JSON (default: reset with --seed)");
  qe->callback([&] { action = [&] { a.query_eval(); }; });
  auto* ql = query->add_subcommand("list", "list supported queries");
  ql->add_option("--task", a.task)->required();
  ql->callback([&] { action = [&] { a.query_list(); }; });
  auto* qn = query->add_subcommand("nearest", "ground free text to a supported query");
  qn->add_option("--task", a.task)->required();
  qn->add_option("text", a.text)->required();
  qn->callback([&] { action = [&] { a.query_nearest(); }; });

  auto* plan = app.add_subcommand("plan", "conditional plans")->require_subcommand(1);
  const auto formats = CLI::IsMember({"plain_list", "basic_py_md", "chain_py"});
  auto* pe = plan->add_subcommand("encode", "render a plan");
  pe->add_option("--task", a.task, "hand-written plan of this task");
  pe->add_option("--in", a.in_path, "plan JSON");
  pe->add_option("--format", a.format)->check(formats);
  pe->callback([&] { action = [&] { a.plan_encode(); }; });
  auto* pd = plan->add_subcommand("decode", "parse plan text to JSON");
  pd->add_option("--in", a.in_path)->required();
  pd->add_option("--task", a.task, "treat the text as a completion for this task");
  pd->add_option("--format", a.format)->check(formats);
  pd->callback([&] { action = [&] { a.plan_decode(); }; });
  auto* pg = plan->add_subcommand("ground", "map a plan onto supported queries and skills");
  pg->add_option("--in", a.in_path)->required();
  pg->add_option("--task", a.task)->required();
  pg->add_option("--format", a.format)->check(formats);
  pg->callback([&] { action = [&] { a.plan_ground(); }; });
  auto* pp = plan->add_subcommand("prompt", "build the few-shot prompt for a task");
  pp->add_option("--task", a.task)->required();
  pp->add_option("--format", a.format)->check(formats);
  pp->callback([&] { action = [&] { a.plan_prompt(); }; });

  auto* llm = app.add_subcommand("llm", "plan completions")->require_subcommand(1);
  auto* lc = llm->add_subcommand("complete", "complete a task prompt");
  lc->add_option("--task", a.task)->required();
  lc->add_option("--format", a.format)->check(formats);
  lc->add_option("--sample", a.sample)->check(CLI::NonNegativeNumber);
  lc->add_option("--backend", a.backend)->check(CLI::IsMember({"replay", "http"}));
  lc->add_option("--store", a.store, "fixture directory");
  lc->add_flag("--log", a.log_completions, "store http completions in the fixture directory");
  lc->callback([&] { action = [&] { a.llm_complete(); }; });
  auto* li = llm->add_subcommand("import", "store a completion as a replay fixture");
  li->add_option("--task", a.task)->required();
  li->add_option("--format", a.format)->check(formats);
  li->add_option("--sample", a.sample)->check(CLI::NonNegativeNumber);
  li->add_option("--file", a.in_path)->required();
  li->add_option("--store", a.store, "fixture directory");
  li->callback([&] { action = [&] { a.llm_import(); }; });

  auto* tr = app.add_subcommand("train", "behavioral cloning");
  tr->add_option("--arch", a.arch)->check(CLI::IsMember({"pcbc", "dc"}));
  tr->add_option("--data", a.data_mode)->check(CLI::IsMember({"zero_shot", "few_shot", "one_shot"}));
  tr->add_option("--target", a.target, "one_shot target (default: every task)");
  tr->add_option("--demos", a.demos_dir)->required();
  tr->callback([&] { action = [&] { a.train(); }; });

  auto* ev = app.add_subcommand("eval", "success rates");
  ev->add_option("--policy", a.policy)->check(CLI::IsMember({"scripted", "random", "pcbc", "dc", "plans"}));
  ev->add_option("--tasks", a.tasks_spec, "base, full, heldout or a comma list");
  ev->add_option("--episodes", a.episodes)->check(CLI::PositiveNumber);
  ev->add_option("--checkpoint", a.checkpoint);
  ev->add_option("--models", a.models_dir, "directory of per-task one-shot checkpoints");
  ev->callback([&] { action = [&] { a.eval(); }; });

  auto* rp = app.add_subcommand("report", "merge results into CSV, JSON and SVG");
  rp->add_option("--in", a.inputs, "results.json files")->required();
  rp->callback([&] { action = [&] { a.report(); }; });

  auto* sc = app.add_subcommand("selfcheck", "gradient checks and oracle suites");
  sc->add_flag("--full", a.full, "also run the training experiments");
  sc->callback([&] { action = [&] { code = a.selfcheck(); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }
  try {
    a.cfg = load_config(a.g.config);
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace lw::cli
