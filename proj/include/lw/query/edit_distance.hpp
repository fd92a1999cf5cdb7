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

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace lw::query {

// Levenshtein distance with unit costs, ASCII case-insensitive.
std::size_t edit_distance(std::string_view a, std::string_view b);

struct NearestMatch {
  std::size_t index = 0;
  std::size_t distance = 0;
};

// Argmin of edit_distance over `candidates`; ties go to the earliest.
// `candidates` must be nonempty.
NearestMatch nearest(std::string_view text, std::span<const std::string> candidates);

}  // namespace lw::query
