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
#include <string>

#include <json.hpp>

#include "lw/common/rng.hpp"
#include "lw/pcbc/gradcheck.hpp"
#include "lw/pcbc/params.hpp"

namespace lw::pcbc {

struct Checkpoint {
  Arch arch = Arch::kPcbc;
  std::uint64_t steps = 0;
  PolicyParams params;
  CounterRng rng{0, 0};
  nlohmann::json meta = nlohmann::json::object();
};

nlohmann::json to_json(const Checkpoint& ckpt);
// Throws InvalidArgument on malformed documents or unexpected shapes.
Checkpoint checkpoint_from_json(const nlohmann::json& doc);

// Doubles are written with round-trip precision, so a reload is bit-exact.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace lw::pcbc
