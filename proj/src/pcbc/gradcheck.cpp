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

#include "lw/pcbc/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "lw/common/error.hpp"
#include "lw/common/hash.hpp"
#include "lw/common/rng.hpp"
#include "lw/world/world.hpp"

namespace lw::pcbc {

double relative_error(double analytic, double numeric, double floor) {
  const double diff = std::abs(analytic - numeric);
  if (diff == 0.0) return 0.0;
  return diff / std::max({std::abs(analytic), std::abs(numeric), floor});
}

GradCheckReport grad_check(const PolicyParams& params, const Batch& batch,
                           const GradCheckOptions& options) {
  PolicyParams grad;
  loss_and_gradient(params, batch, &grad);

  GradCheckReport report;
  report.tolerance = options.tolerance;
  PolicyParams probe = params;
  // Walk the probe and the analytic gradient block by block in lockstep.
  std::vector<Eigen::MatrixXd*> probe_blocks;
  std::vector<const Eigen::MatrixXd*> grad_blocks;
  std::vector<std::string> names;
  probe.for_each_block([&](const char* name, Eigen::MatrixXd& m) {
    probe_blocks.push_back(&m);
    names.emplace_back(name);
  });
  grad.for_each_block([&](const char*, const Eigen::MatrixXd& m) { grad_blocks.push_back(&m); });

  for (std::size_t b = 0; b < probe_blocks.size(); ++b) {
    Eigen::MatrixXd& m = *probe_blocks[b];
    GradCheckEntry worst{names[b]};
    bool first = true;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const double saved = m(i, j);
        m(i, j) = saved + options.step;
        const double up = bc_loss(probe, batch);
        m(i, j) = saved - options.step;
        const double down = bc_loss(probe, batch);
        m(i, j) = saved;
        const double numeric = (up - down) / (2.0 * options.step);
        const double analytic = (*grad_blocks[b])(i, j);
        const double rel = relative_error(analytic, numeric, options.floor);
        ++report.checked;
        if (first || rel > worst.rel_error) {
          worst = GradCheckEntry{names[b], i, j, analytic, numeric, rel};
          first = false;
        }
      }
    }
    report.max_rel_error = std::max(report.max_rel_error, worst.rel_error);
    report.worst_per_block.push_back(worst);
  }
  return report;
}

std::string to_string(Arch arch) { return arch == Arch::kPcbc ? "pcbc" : "dc"; }

Arch parse_arch(const std::string& name) {
  if (name == "pcbc") return Arch::kPcbc;
  if (name == "dc") return Arch::kDc;
  throw InvalidArgument("unknown architecture: " + name + " (expected pcbc or dc)");
}

Batch random_instance(Arch arch, std::uint64_t seed, int batch_size) {
  if (batch_size < 1) throw InvalidArgument("batch size must be positive");
  CounterRng rng(seed, fnv1a64("grad-instance"));
  const auto& tasks = world::all_tasks();
  Batch batch;
  batch.obs.resize(world::kObservationDim, batch_size);
  batch.text.resize(kVocabSize, batch_size);
  batch.actions.resize(kActionDim, batch_size);
  for (int k = 0; k < batch_size; ++k) {
    const auto& task = tasks[rng.below(tasks.size())];
    world::WorldState s = world::reset(task, rng.next_u64());
    const auto n_steps = rng.below(40);
    for (std::uint64_t i = 0; i < n_steps; ++i) {
      world::Action a;
      a.move = world::Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
      a.grip = rng.uniform(-1, 1);
      s = world::step(s, a);
    }
    batch.obs.col(k) = world::observe(s);
    if (arch == Arch::kPcbc) {
      const auto plan = skills::compile(skills::expert_plan(task.name), task);
      batch.text.col(k) = mixed_counts(skill_counts(plan), condition_truths(plan, s));
    } else {
      batch.text.col(k) = bag_of_words(task.description);
    }
    for (int r = 0; r < kActionDim; ++r) batch.actions(r, k) = rng.uniform(-1, 1);
  }
  return batch;
}

}  // namespace lw::pcbc
