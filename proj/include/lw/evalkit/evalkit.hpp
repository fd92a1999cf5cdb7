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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lw/pcbc/policy.hpp"
#include "lw/plans/plan.hpp"
#include "lw/skills/expert.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/types.hpp"

namespace lw::evalkit {

inline constexpr int kDefaultEpisodes = 50;

// Anything that maps (task, state) to an action without side effects.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string id() const = 0;
  virtual world::Action act(const std::string& task, const world::WorldState& state) const = 0;
};

// First-true-condition executor over compiled plans (expert or grounded).
class ScriptedPolicy : public Policy {
 public:
  ScriptedPolicy(std::string id, std::map<std::string, skills::ScriptedPlan> plans);
  std::string id() const override { return id_; }
  world::Action act(const std::string& task, const world::WorldState& state) const override;

 private:
  std::string id_;
  std::map<std::string, skills::ScriptedPlan> plans_;
};

class PcbcAdapter : public Policy {
 public:
  explicit PcbcAdapter(pcbc::PcbcPolicy policy, std::string id = "pcbc");
  std::string id() const override { return id_; }
  world::Action act(const std::string& task, const world::WorldState& state) const override;

 private:
  pcbc::PcbcPolicy policy_;
  std::string id_;
};

class DcAdapter : public Policy {
 public:
  explicit DcAdapter(pcbc::DcPolicy policy, std::string id = "dc");
  std::string id() const override { return id_; }
  world::Action act(const std::string& task, const world::WorldState& state) const override;

 private:
  pcbc::DcPolicy policy_;
  std::string id_;
};

// Uniform actions keyed by (seed, task, episode start, step): no hidden state.
class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed) {}
  std::string id() const override { return "random"; }
  world::Action act(const std::string& task, const world::WorldState& state) const override;

 private:
  std::uint64_t seed_;
};

// Registry expert plans for the named tasks.
ScriptedPolicy expert_policy(const std::vector<std::string>& tasks);

struct Episode {
  std::vector<world::WorldState> trajectory;  // reset state plus one per step
  bool success = false;
};

Episode run_episode(const Policy& policy, const world::TaskSpec& task, std::uint64_t seed);
// Throws PlanError when the plan is not grounded for the task.
Episode run_plan_with_scripted_skills(const plans::ConditionalPlan& plan,
                                      const world::TaskSpec& task, std::uint64_t seed);

struct EvalResult {
  std::string policy;
  std::string task;
  std::vector<std::uint64_t> seeds;
  std::vector<bool> flags;
  double success_rate = 0.0;
};

// Seeds seed0 .. seed0 + n_eps - 1 for every task. `jobs` worker threads
// share the (task, seed) grid; results do not depend on it.
std::vector<EvalResult> evaluate(const Policy& policy, const std::vector<std::string>& tasks,
                                 int n_eps, std::uint64_t seed0, int jobs = 1);

struct BestOf {
  std::size_t best = 0;          // lowest index among the best
  std::vector<double> rates;     // per plan
  double best_rate() const { return rates.empty() ? 0.0 : rates[best]; }
};

// Grounds each plan for the task and keeps the best scripted success rate.
BestOf best_of_plans(const std::vector<plans::ConditionalPlan>& candidates,
                     const world::TaskSpec& task, int n_eps, std::uint64_t seed0);

enum class PlanSource { kExpert, kFixtures };
std::string to_string(PlanSource source);
PlanSource parse_plan_source(const std::string& name);

// Plans a PCBC policy conditions on. kExpert: registry plans everywhere.
// kFixtures: hand-written plans for BASE10 tasks and, for the others, the
// best stored chain_py completion by scripted success over n_eps seeds.
std::map<std::string, skills::ScriptedPlan> select_plans(PlanSource source,
                                                         const std::vector<std::string>& tasks,
                                                         const std::filesystem::path& replay_dir,
                                                         int n_eps, std::uint64_t seed0);

struct CdfPoint {
  int rank = 0;
  double value = 0.0;
};

// Rates sorted in descending order; point k is the k-th largest.
std::vector<CdfPoint> success_cdf(const std::vector<EvalResult>& results);
std::vector<CdfPoint> success_cdf(std::vector<double> rates);

// One report line per (policy, task): mean over runs and the min/max band.
struct ReportRow {
  std::string policy;
  std::string task;
  int n = 0;  // episodes per run
  double success_rate = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> runs;  // per-seed success rates

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// `runs[i]` holds the results of the i-th seed; rows keep first-seen order.
std::vector<ReportRow> aggregate(const std::vector<std::vector<EvalResult>>& runs);

struct CdfBand {
  std::string policy;
  std::vector<CdfPoint> mean;  // CDF of per-task mean rates
  std::vector<double> lo, hi;  // per-rank min and max over the runs' CDFs
};

std::vector<CdfBand> cdf_bands(const std::vector<ReportRow>& rows);

enum ReportFormat : unsigned { kCsv = 1, kJson = 2, kSvg = 4, kAllReports = 7 };

// results.csv, results.json and cdf.svg in `dir`. Byte-deterministic.
std::vector<std::filesystem::path> write_report(const std::vector<ReportRow>& rows,
                                                const std::filesystem::path& dir,
                                                unsigned formats = kAllReports);

std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);
std::string report_svg(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_csv(const std::string& csv);
std::vector<ReportRow> rows_from_json(const std::string& json);

}  // namespace lw::evalkit
