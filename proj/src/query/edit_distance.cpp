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

#include "lw/query/edit_distance.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "lw/common/error.hpp"

namespace lw::query {
namespace {

inline char fold(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Single row over the shorter string.
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    const char ca = fold(a[i - 1]);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t substitute = diagonal + (ca == fold(b[j - 1]) ? 0 : 1);
      row[j] = std::min({up + 1, row[j - 1] + 1, substitute});
      diagonal = up;
    }
  }
  return row[b.size()];
}

NearestMatch nearest(std::string_view text, std::span<const std::string> candidates) {
  if (candidates.empty()) throw InvalidArgument("nearest: empty candidate list");
  NearestMatch best{0, edit_distance(text, candidates[0])};
  for (std::size_t i = 1; i < candidates.size() && best.distance > 0; ++i) {
    const std::size_t d = edit_distance(text, candidates[i]);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

}  // namespace lw::query
