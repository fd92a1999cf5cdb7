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

#include "lw/query/relations.hpp"

namespace lw::query {

std::string_view phrase(RelationKind kind) {
  switch (kind) {
    case RelationKind::kNear: return "near";
    case RelationKind::kFarFrom: return "far from";
    case RelationKind::kLeftOf: return "left of";
    case RelationKind::kRightOf: return "right of";
    case RelationKind::kInFrontOf: return "in front of";
    case RelationKind::kBehind: return "behind";
    case RelationKind::kAbove: return "above";
    case RelationKind::kBelow: return "below";
    case RelationKind::kAround: return "around";
    case RelationKind::kTouching: return "touching";
    case RelationKind::kAlignedX: return "aligned in x with";
    case RelationKind::kAlignedY: return "aligned in y with";
    case RelationKind::kAlignedZ: return "aligned in z with";
  }
  return {};
}

std::optional<RelationKind> relation_from_phrase(std::string_view text) {
  for (RelationKind k : kAllRelations) {
    if (phrase(k) == text) return k;
  }
  return std::nullopt;
}

}  // namespace lw::query
