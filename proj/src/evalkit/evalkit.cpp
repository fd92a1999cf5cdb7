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

#include "lw/evalkit/evalkit.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lw/common/error.hpp"
#include "lw/common/hash.hpp"
#include "lw/common/rng.hpp"
#include "lw/plans/completion.hpp"
#include "lw/world/world.hpp"

namespace lw::evalkit {

ScriptedPolicy::ScriptedPolicy(std::string id, std::map<std::string, skills::ScriptedPlan> plans)
    : id_(std::move(id)), plans_(std::move(plans)) {}

world::Action ScriptedPolicy::act(const std::string& task, const world::WorldState& state) const {
  auto it = plans_.find(task);
  if (it == plans_.end()) throw NotFound("policy " + id_ + " has no plan for task " + task);
  return skills::scripted_action(it->second, state);
}

PcbcAdapter::PcbcAdapter(pcbc::PcbcPolicy policy, std::string id)
    : policy_(std::move(policy)), id_(std::move(id)) {}

world::Action PcbcAdapter::act(const std::string& task, const world::WorldState& state) const {
  return policy_.act(task, state);
}

DcAdapter::DcAdapter(pcbc::DcPolicy policy, std::string id)
    : policy_(std::move(policy)), id_(std::move(id)) {}

world::Action DcAdapter::act(const std::string& task, const world::WorldState& state) const {
  return policy_.act_dc(task, state);
}

world::Action RandomPolicy::act(const std::string& task, const world::WorldState& state) const {
  // The goal is fixed within an episode and differs between episodes.
  std::uint64_t key = fnv1a64(task);
  for (int i = 0; i < 3; ++i) {
    std::uint64_t bits = 0;
    const double g = state.goal_pos(i);
    std::memcpy(&bits, &g, sizeof bits);
    key = (key ^ bits) * 0x100000001b3ULL;
  }
  CounterRng rng(seed_, key, static_cast<std::uint64_t>(state.step_index) * 4);
  world::Action a;
  a.move = world::Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
  a.grip = rng.uniform(-1, 1);
  return a;
}

ScriptedPolicy expert_policy(const std::vector<std::string>& tasks) {
  std::map<std::string, skills::ScriptedPlan> plans;
  for (const auto& name : tasks) {
    plans.emplace(name, skills::compile(skills::expert_plan(name), world::find_task(name)));
  }
  return ScriptedPolicy("scripted", std::move(plans));
}

Episode run_episode(const Policy& policy, const world::TaskSpec& task, std::uint64_t seed) {
  Episode ep;
  ep.trajectory.reserve(static_cast<std::size_t>(task.horizon) + 1);
  ep.trajectory.push_back(world::reset(task, seed));
  for (int t = 0; t < task.horizon; ++t) {
    const auto& s = ep.trajectory.back();
    ep.trajectory.push_back(world::step(s, policy.act(task.name, s)));
  }
  ep.success = world::episode_success(task, ep.trajectory);
  return ep;
}

Episode run_plan_with_scripted_skills(const plans::ConditionalPlan& plan,
                                      const world::TaskSpec& task, std::uint64_t seed) {
  ScriptedPolicy policy("plan", {{task.name, plans::to_scripted(plan, task)}});
  return run_episode(policy, task, seed);
}

std::vector<EvalResult> evaluate(const Policy& policy, const std::vector<std::string>& tasks,
                                 int n_eps, std::uint64_t seed0, int jobs) {
  if (n_eps < 1) throw InvalidArgument("episode count must be at least 1");
  std::vector<const world::TaskSpec*> specs;
  for (const auto& name : tasks) specs.push_back(&world::find_task(name));

  const std::size_t n = static_cast<std::size_t>(n_eps);
  const std::size_t total = specs.size() * n;
  std::vector<char> flags(total, 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        flags[i] = run_episode(policy, *specs[i / n], seed0 + i % n).success ? 1 : 0;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EvalResult> out;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    EvalResult r{policy.id(), specs[k]->name, {}, {}, 0.0};
    std::size_t ok = 0;
    for (std::size_t e = 0; e < n; ++e) {
      r.seeds.push_back(seed0 + e);
      r.flags.push_back(flags[k * n + e] != 0);
      ok += flags[k * n + e] != 0;
    }
    r.success_rate = static_cast<double>(ok) / static_cast<double>(n);
    out.push_back(std::move(r));
  }
  return out;
}

BestOf best_of_plans(const std::vector<plans::ConditionalPlan>& candidates,
                     const world::TaskSpec& task, int n_eps, std::uint64_t seed0) {
  if (candidates.empty()) throw InvalidArgument("no candidate plans for " + task.name);
  BestOf out;
  for (const auto& plan : candidates) {
    const auto grounded = plans::ground_plan(plan, task);
    ScriptedPolicy policy("plan", {{task.name, plans::to_scripted(grounded, task)}});
    const double rate = evaluate(policy, {task.name}, n_eps, seed0).front().success_rate;
    if (rate > out.best_rate() || out.rates.empty()) out.best = out.rates.size();
    out.rates.push_back(rate);
  }
  return out;
}

std::string to_string(PlanSource source) {
  return source == PlanSource::kExpert ? "expert" : "fixtures";
}

PlanSource parse_plan_source(const std::string& name) {
  if (name == "expert") return PlanSource::kExpert;
  if (name == "fixtures") return PlanSource::kFixtures;
  throw InvalidArgument("unknown plan source: " + name + " (expected expert or fixtures)");
}

std::map<std::string, skills::ScriptedPlan> select_plans(PlanSource source,
                                                         const std::vector<std::string>& tasks,
                                                         const std::filesystem::path& replay_dir,
                                                         int n_eps, std::uint64_t seed0) {
  const auto base = world::task_names(world::TaskSet::kBase10);
  std::map<std::string, skills::ScriptedPlan> out;
  for (const auto& name : tasks) {
    const auto& task = world::find_task(name);
    const bool is_base = std::find(base.begin(), base.end(), name) != base.end();
    if (source == PlanSource::kExpert || is_base) {
      out.emplace(name, skills::compile(skills::expert_plan(name), task));
      continue;
    }
    const auto candidates = plans::stored_plans(replay_dir, task, plans::PlanFormat::kChainPy);
    const auto best = best_of_plans(candidates, task, n_eps, seed0);
    out.emplace(name, plans::to_scripted(plans::ground_plan(candidates[best.best], task), task));
  }
  return out;
}

std::vector<CdfPoint> success_cdf(std::vector<double> rates) {
  if (rates.empty()) throw InvalidArgument("success_cdf needs at least one result");
  std::sort(rates.begin(), rates.end(), std::greater<>());
  std::vector<CdfPoint> out;
  for (std::size_t k = 0; k < rates.size(); ++k) out.push_back({static_cast<int>(k + 1), rates[k]});
  return out;
}

std::vector<CdfPoint> success_cdf(const std::vector<EvalResult>& results) {
  std::vector<double> rates;
  for (const auto& r : results) rates.push_back(r.success_rate);
  return success_cdf(std::move(rates));
}

std::vector<ReportRow> aggregate(const std::vector<std::vector<EvalResult>>& runs) {
  std::vector<ReportRow> rows;
  auto find = [&](const EvalResult& r) -> ReportRow* {
    for (auto& row : rows) {
      if (row.policy == r.policy && row.task == r.task) return &row;
    }
    return nullptr;
  };
  for (const auto& run : runs) {
    for (const auto& r : run) {
      ReportRow* row = find(r);
      if (row == nullptr) {
        rows.push_back({r.policy, r.task, static_cast<int>(r.flags.size()), 0.0, 0.0, 0.0, {}});
        row = &rows.back();
      } else if (row->n != static_cast<int>(r.flags.size())) {
        throw InvalidArgument("runs of " + r.policy + "/" + r.task + " differ in episode count");
      }
      row->runs.push_back(r.success_rate);
    }
  }
  for (auto& row : rows) {
    double sum = 0.0;
    for (double v : row.runs) sum += v;
    row.success_rate = sum / static_cast<double>(row.runs.size());
    row.min = *std::min_element(row.runs.begin(), row.runs.end());
    row.max = *std::max_element(row.runs.begin(), row.runs.end());
  }
  return rows;
}

std::vector<CdfBand> cdf_bands(const std::vector<ReportRow>& rows) {
  std::vector<CdfBand> bands;
  std::vector<std::string> policies;
  for (const auto& r : rows) {
    if (std::find(policies.begin(), policies.end(), r.policy) == policies.end()) {
      policies.push_back(r.policy);
    }
  }
  for (const auto& p : policies) {
    CdfBand band{p, {}, {}, {}};
    std::vector<double> means;
    std::vector<std::vector<double>> per_run;
    for (const auto& r : rows) {
      if (r.policy != p) continue;
      means.push_back(r.success_rate);
      if (per_run.size() < r.runs.size()) per_run.resize(r.runs.size());
      for (std::size_t i = 0; i < r.runs.size(); ++i) per_run[i].push_back(r.runs[i]);
    }
    band.mean = success_cdf(means);
    band.lo.assign(means.size(), 1.0);
    band.hi.assign(means.size(), 0.0);
    for (auto& run : per_run) {
      if (run.size() != means.size()) continue;  // incomplete run, no band
      const auto cdf = success_cdf(run);
      for (std::size_t k = 0; k < cdf.size(); ++k) {
        band.lo[k] = std::min(band.lo[k], cdf[k].value);
        band.hi[k] = std::max(band.hi[k], cdf[k].value);
      }
    }
    if (per_run.empty()) {
      for (std::size_t k = 0; k < means.size(); ++k) band.lo[k] = band.hi[k] = band.mean[k].value;
    }
    bands.push_back(std::move(band));
  }
  return bands;
}

namespace {

// Shortest text that reads back to the same double.
std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "policy,task,n,success_rate,min,max\n";
  for (const auto& r : rows) {
    out += r.policy + "," + r.task + "," + std::to_string(r.n) + "," + number(r.success_rate) + "," +
           number(r.min) + "," + number(r.max) + "\n";
  }
  return out;
}

std::string report_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"policy", r.policy}, {"task", r.task}, {"n", r.n},
                   {"success_rate", r.success_rate}, {"min", r.min}, {"max", r.max},
                   {"runs", r.runs}});
  }
  return nlohmann::json{{"rows", arr}}.dump(2) + "\n";
}

std::vector<ReportRow> rows_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "policy,task,n,success_rate,min,max") {
    throw InvalidArgument("results CSV has an unexpected header");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw InvalidArgument("results CSV row has " + std::to_string(f.size()) + " fields");
    ReportRow r;
    r.policy = f[0];
    r.task = f[1];
    try {
      r.n = std::stoi(f[2]);
      r.success_rate = std::stod(f[3]);
      r.min = std::stod(f[4]);
      r.max = std::stod(f[5]);
    } catch (const std::exception&) {
      throw InvalidArgument("results CSV row is not numeric: " + line);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> rows_from_json(const std::string& json) {
  try {
    std::vector<ReportRow> rows;
    const auto doc = nlohmann::json::parse(json);
    for (const auto& j : doc.at("rows")) {
      rows.push_back({j.at("policy").get<std::string>(), j.at("task").get<std::string>(),
                      j.at("n").get<int>(), j.at("success_rate").get<double>(),
                      j.at("min").get<double>(), j.at("max").get<double>(),
                      j.value("runs", std::vector<double>{})});
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed results JSON: ") + e.what());
  }
}

std::string report_svg(const std::vector<ReportRow>& rows) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  const double w = 640, h = 400, left = 60, right = 150, top = 30, bottom = 50;
  const double pw = w - left - right, ph = h - top - bottom;
  const auto bands = rows.empty() ? std::vector<CdfBand>{} : cdf_bands(rows);
  std::size_t tasks = 1;
  for (const auto& b : bands) tasks = std::max(tasks, b.mean.size());
  auto x = [&](double rank) {
    return tasks == 1 ? left + pw / 2 : left + pw * (rank - 1) / static_cast<double>(tasks - 1);
  };
  auto y = [&](double v) { return top + ph * (1.0 - v); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(w) + "\" height=\"" + fixed(h) +
       "\" viewBox=\"0 0 " + fixed(w) + " " + fixed(h) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(w) + "\" height=\"" + fixed(h) + "\" fill=\"white\"/>\n";
  s += "<text x=\"" + fixed(left) + "\" y=\"20.00\" font-size=\"14\">success rate by task rank</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = i / 4.0;
    s += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y(v)) + "\" x2=\"" + fixed(left + pw) +
         "\" y2=\"" + fixed(y(v)) + "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + fixed(left - 8) + "\" y=\"" + fixed(y(v) + 4) +
         "\" font-size=\"11\" text-anchor=\"end\">" + fixed(v) + "</text>\n";
  }
  s += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y(0)) + "\" x2=\"" + fixed(left + pw) +
       "\" y2=\"" + fixed(y(0)) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(y(0)) + "\" x2=\"" + fixed(left) +
       "\" y2=\"" + fixed(y(1)) + "\" stroke=\"black\"/>\n";
  for (std::size_t k = 1; k <= tasks; ++k) {
    s += "<text x=\"" + fixed(x(static_cast<double>(k))) + "\" y=\"" + fixed(y(0) + 16) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + std::to_string(k) + "</text>\n";
  }
  s += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(h - 10) +
       "\" font-size=\"12\" text-anchor=\"middle\">tasks (ranked)</text>\n";

  for (std::size_t i = 0; i < bands.size(); ++i) {
    const auto& b = bands[i];
    const std::string color = kColors[i % (sizeof kColors / sizeof kColors[0])];
    std::string band;
    for (std::size_t k = 0; k < b.hi.size(); ++k) {
      band += fixed(x(static_cast<double>(k + 1))) + "," + fixed(y(b.hi[k])) + " ";
    }
    for (std::size_t k = b.lo.size(); k-- > 0;) {
      band += fixed(x(static_cast<double>(k + 1))) + "," + fixed(y(b.lo[k])) + " ";
    }
    if (!band.empty()) band.pop_back();
    s += "<polygon points=\"" + band + "\" fill=\"" + color + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    std::string line;
    for (const auto& p : b.mean) {
      line += fixed(x(p.rank)) + "," + fixed(y(p.value)) + " ";
    }
    if (!line.empty()) line.pop_back();
    s += "<polyline points=\"" + line + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    const double ly = top + 20.0 * static_cast<double>(i);
    s += "<line x1=\"" + fixed(left + pw + 15) + "\" y1=\"" + fixed(ly) + "\" x2=\"" +
         fixed(left + pw + 35) + "\" y2=\"" + fixed(ly) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fixed(left + pw + 40) + "\" y=\"" + fixed(ly + 4) + "\" font-size=\"12\">" +
         xml_escape(b.policy) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::vector<std::filesystem::path> write_report(const std::vector<ReportRow>& rows,
                                                const std::filesystem::path& dir,
                                                unsigned formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const char* name, const std::string& text) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
    written.push_back(path);
  };
  if (formats & kCsv) emit("results.csv", report_csv(rows));
  if (formats & kJson) emit("results.json", report_json(rows));
  if (formats & kSvg) emit("cdf.svg", report_svg(rows));
  return written;
}

}  // namespace lw::evalkit
