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

#include "lw/skills/expert.hpp"

namespace lw::skills {

struct TaskDemos {
  std::string task;
  std::vector<Demonstration> demos;
  // Every episode seed tried, in order, with its success flag.
  std::vector<std::uint64_t> attempted_seeds;
  std::vector<bool> attempted_success;
};

struct DemoSet {
  std::uint64_t seed = 0;
  int n_per_task = 0;
  std::vector<TaskDemos> tasks;

  const TaskDemos* find(const std::string& task) const;
};

class DemoError : public Error {
 public:
  explicit DemoError(const std::string& message) : Error("demos", message) {}
};

// Attempts per task before giving up: 3n + 10.
int retry_budget(int n_per_task);

// Runs the registry expert on seeds seed, seed+1, ... keeping only
// successful episodes until n per task are collected. Deterministic.
DemoSet generate_demos(const std::vector<std::string>& tasks, int n_per_task,
                       std::uint64_t seed);

// Layout: <dir>/<task>.jsonl (one record per step) and <dir>/demos.json.
void write_demoset(const DemoSet& set, const std::string& dir);
DemoSet read_demoset(const std::string& dir);

}  // namespace lw::skills
