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
#include <string>
#include <vector>

#include "lw/pcbc/params.hpp"
#include "lw/pcbc/policy.hpp"

namespace lw::pcbc {

struct GradCheckEntry {
  std::string block;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  std::size_t checked = 0;
  std::vector<GradCheckEntry> worst_per_block;

  bool passed() const { return max_rel_error <= tolerance; }
};

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor; gradients below it are compared in absolute terms.
  double floor = 1e-6;
};

// |a - n| / max(|a|, |n|, floor); 0 when both are exactly 0.
double relative_error(double analytic, double numeric, double floor);

// Compares loss_and_gradient against central differences of bc_loss for
// every parameter.
GradCheckReport grad_check(const PolicyParams& params, const Batch& batch,
                           const GradCheckOptions& options = {});

enum class Arch { kPcbc, kDc };
std::string to_string(Arch arch);
Arch parse_arch(const std::string& name);

// A small batch built from real tasks: random task, a few steps of random
// actions from reset, condition truths from the task's expert plan (PCBC)
// or its description (DC), and random target actions.
Batch random_instance(Arch arch, std::uint64_t seed, int batch_size = 4);

}  // namespace lw::pcbc
