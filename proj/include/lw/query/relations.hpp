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

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "lw/world/constants.hpp"

namespace lw::query {

enum class RelationKind {
  kNear,
  kFarFrom,
  kLeftOf,
  kRightOf,
  kInFrontOf,
  kBehind,
  kAbove,
  kBelow,
  kAround,
  kTouching,
  kAlignedX,
  kAlignedY,
  kAlignedZ,
};

inline constexpr std::array<RelationKind, 13> kAllRelations = {
    RelationKind::kNear,     RelationKind::kFarFrom,  RelationKind::kLeftOf,
    RelationKind::kRightOf,  RelationKind::kInFrontOf, RelationKind::kBehind,
    RelationKind::kAbove,    RelationKind::kBelow,    RelationKind::kAround,
    RelationKind::kTouching, RelationKind::kAlignedX, RelationKind::kAlignedY,
    RelationKind::kAlignedZ};

// Relation tolerances, meters.
namespace tolerance {
inline constexpr double kNear = 0.08;
inline constexpr double kSide = 0.02;        // left/right/front/behind margin
inline constexpr double kVertical = 0.02;    // above/below margin
inline constexpr double kColumn = 0.06;      // above/below horizontal radius
inline constexpr double kAroundHorizontal = 0.03;
inline constexpr double kAroundVertical = 0.03;
inline constexpr double kTouching = 0.01;
inline constexpr double kAligned = 0.01;
inline constexpr double kClosedAt = 0.5;     // gripper_closed <=> closure >= this
}  // namespace tolerance

// Surface phrase used between "is" and the object, e.g. "in front of".
std::string_view phrase(RelationKind kind);
std::optional<RelationKind> relation_from_phrase(std::string_view phrase);

// Geometric verdict for `a REL b`. `table_a`/`table_b` mark the table, for
// which touching degenerates to a height test on the other argument.
template <typename Scalar>
bool relation_holds(RelationKind kind, const Eigen::Matrix<Scalar, 3, 1>& a,
                    const Eigen::Matrix<Scalar, 3, 1>& b, bool table_a = false,
                    bool table_b = false) {
  using std::abs;
  const Eigen::Matrix<Scalar, 3, 1> d = a - b;
  const Scalar horizontal = d.template head<2>().norm();
  switch (kind) {
    case RelationKind::kNear: return d.norm() < Scalar(tolerance::kNear);
    case RelationKind::kFarFrom: return !(d.norm() < Scalar(tolerance::kNear));
    case RelationKind::kLeftOf: return a.x() < b.x() - Scalar(tolerance::kSide);
    case RelationKind::kRightOf: return a.x() > b.x() + Scalar(tolerance::kSide);
    case RelationKind::kInFrontOf: return a.y() < b.y() - Scalar(tolerance::kSide);
    case RelationKind::kBehind: return a.y() > b.y() + Scalar(tolerance::kSide);
    case RelationKind::kAbove:
      return a.z() > b.z() + Scalar(tolerance::kVertical) && horizontal < Scalar(tolerance::kColumn);
    case RelationKind::kBelow:
      return a.z() < b.z() - Scalar(tolerance::kVertical) && horizontal < Scalar(tolerance::kColumn);
    case RelationKind::kAround:
      return horizontal < Scalar(tolerance::kAroundHorizontal) &&
             abs(d.z()) < Scalar(tolerance::kAroundVertical);
    case RelationKind::kTouching: {
      const Scalar top = Scalar(world::constants::kTableHeight + tolerance::kTouching);
      if (table_b) return a.z() < top;
      if (table_a) return b.z() < top;
      return d.norm() < Scalar(tolerance::kTouching);
    }
    case RelationKind::kAlignedX: return abs(d.x()) < Scalar(tolerance::kAligned);
    case RelationKind::kAlignedY: return abs(d.y()) < Scalar(tolerance::kAligned);
    case RelationKind::kAlignedZ: return abs(d.z()) < Scalar(tolerance::kAligned);
  }
  return false;
}

}  // namespace lw::query
