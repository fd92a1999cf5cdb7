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

#include <string>
#include <vector>

#include "lw/common/error.hpp"
#include "lw/query/relations.hpp"
#include "lw/world/tasks.hpp"
#include "lw/world/types.hpp"

namespace lw::query {

inline constexpr const char* kGripper = "gripper";
inline constexpr const char* kTable = "table";
inline constexpr const char* kWall = "wall";
inline constexpr const char* kGoal = "goal";

struct Atom {
  enum class Kind { kBinary, kGripperOpen, kGripperClosed };
  Kind kind = Kind::kBinary;
  RelationKind relation = RelationKind::kNear;
  std::string subject;
  std::string object;  // empty for unary atoms

  static Atom binary(RelationKind rel, std::string subject, std::string object) {
    return {Kind::kBinary, rel, std::move(subject), std::move(object)};
  }
  static Atom gripper_open() { return {Kind::kGripperOpen, RelationKind::kNear, kGripper, {}}; }
  static Atom gripper_closed() {
    return {Kind::kGripperClosed, RelationKind::kNear, kGripper, {}};
  }

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
  bool negated = false;
  Atom atom;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// Conjunction of literals; never empty.
struct Query {
  std::vector<Literal> literals;
  friend bool operator==(const Query&, const Query&) = default;
};

class QueryError : public Error {
 public:
  explicit QueryError(const std::string& message) : Error("query", message) {}
};

// Every name a query may mention for this task: the gripper, the task's
// objects, then the fixed table, wall and goal.
std::vector<std::string> entity_names(const world::TaskSpec& task);

// Grammar:  ["the"] SUBJ "is" PRED ("and" (PRED | ["the"] SUBJ "is" PRED))*
//           PRED := ["not"] (REL ["the"] OBJ | "open" | "closed")
// Case-insensitive. A subject carries over to following predicates until a
// new "SUBJ is" clause appears. Throws QueryError with a hint on failure.
Query parse_query(const std::string& text, const world::TaskSpec& task);

// Canonical sentence; parse_query(render(q)) == q.
std::string render(const Query& query);
std::string render(const Literal& literal);

// Throws QueryError if a referenced object is missing from the state.
bool eval_literal(const Literal& literal, const world::WorldState& state);
bool eval_query(const Query& query, const world::WorldState& state);

// Every single literal (both polarities) in canonical form, in a stable
// order: gripper open/closed, then each relation over ordered entity pairs.
std::vector<std::string> supported_queries(const world::TaskSpec& task);

// Maps free text onto the supported vocabulary. Each "and"-separated
// conjunct is matched by edit distance to the nearest supported literal
// (earliest wins on ties), comparing content words only: articles, "is" and
// "robot's" are dropped on both sides. A conjunct that does not start with
// an entity inherits the previous subject. Matches are re-joined canonically.
std::string nearest_query(const std::string& text, const world::TaskSpec& task);

}  // namespace lw::query
