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

#include "lw/query/query.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "lw/query/edit_distance.hpp"
#include "lw/world/constants.hpp"

namespace lw::query {
namespace {

using world::TaskSpec;
using world::Vec3;
using world::WorldState;

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || ch == '_' || ch == '-') {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string join(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const TaskSpec& task)
      : tokens_(tokenize(text)), entities_(entity_names(task)) {
    for (const auto& e : entities_) entity_tokens_.push_back(tokenize(e));
    for (RelationKind k : kAllRelations) relation_tokens_.push_back(tokenize(std::string(phrase(k))));
  }

  Query parse() {
    if (tokens_.empty()) throw QueryError("empty query");
    Query q;
    std::string subject = expect_subject_clause();
    parse_predicate(subject, q);
    while (pos_ < tokens_.size()) {
      if (!accept("and")) {
        throw QueryError("expected 'and' before '" + join(tokens_, pos_, tokens_.size()) + "'");
      }
      if (auto next = try_subject_clause()) subject = *next;
      parse_predicate(subject, q);
    }
    return q;
  }

 private:
  bool accept(std::string_view word) {
    if (pos_ < tokens_.size() && tokens_[pos_] == word) {
      ++pos_;
      return true;
    }
    return false;
  }

  // Longest entity name starting at pos_.
  std::optional<std::string> match_entity() {
    std::size_t best = 0;
    std::optional<std::string> name;
    for (std::size_t i = 0; i < entities_.size(); ++i) {
      const auto& et = entity_tokens_[i];
      if (et.size() <= best || pos_ + et.size() > tokens_.size()) continue;
      if (std::equal(et.begin(), et.end(), tokens_.begin() + static_cast<std::ptrdiff_t>(pos_))) {
        best = et.size();
        name = entities_[i];
      }
    }
    if (name) pos_ += best;
    return name;
  }

  std::optional<RelationKind> match_relation() {
    std::size_t best = 0;
    std::optional<RelationKind> rel;
    for (std::size_t i = 0; i < kAllRelations.size(); ++i) {
      const auto& rt = relation_tokens_[i];
      if (rt.size() <= best || pos_ + rt.size() > tokens_.size()) continue;
      if (std::equal(rt.begin(), rt.end(), tokens_.begin() + static_cast<std::ptrdiff_t>(pos_))) {
        best = rt.size();
        rel = kAllRelations[i];
      }
    }
    if (rel) pos_ += best;
    return rel;
  }

  [[noreturn]] void unknown_object() {
    std::size_t end = pos_;
    while (end < tokens_.size() && tokens_[end] != "is" && tokens_[end] != "and") ++end;
    const std::string got = pos_ < tokens_.size() ? join(tokens_, pos_, end) : "<end of query>";
    throw QueryError("unknown object '" + got + "'; known objects: " + join_names(entities_));
  }

  std::string expect_subject_clause() {
    accept("the");
    auto subject = match_entity();
    if (!subject) unknown_object();
    if (!accept("is")) throw QueryError("expected 'is' after '" + *subject + "'");
    return *subject;
  }

  std::optional<std::string> try_subject_clause() {
    const std::size_t saved = pos_;
    accept("the");
    if (auto subject = match_entity()) {
      if (accept("is")) return subject;
    }
    pos_ = saved;
    return std::nullopt;
  }

  void parse_predicate(const std::string& subject, Query& q) {
    Literal lit;
    lit.negated = accept("not");
    if (accept("open")) {
      lit.atom = Atom::gripper_open();
    } else if (accept("closed")) {
      lit.atom = Atom::gripper_closed();
    } else if (auto rel = match_relation()) {
      accept("the");
      auto object = match_entity();
      if (!object) unknown_object();
      if (*object == subject) throw QueryError("'" + subject + "' cannot relate to itself");
      lit.atom = Atom::binary(*rel, subject, *object);
    } else {
      std::size_t end = pos_;
      while (end < tokens_.size() && tokens_[end] != "the" && tokens_[end] != "and") ++end;
      const std::string got = pos_ < end ? join(tokens_, pos_, end) : "<end of query>";
      std::vector<std::string> phrases;
      for (RelationKind k : kAllRelations) phrases.emplace_back(phrase(k));
      phrases.emplace_back("open");
      phrases.emplace_back("closed");
      const auto hint = nearest(got, phrases);
      throw QueryError("unsupported relation phrase '" + got + "'; nearest supported phrase: '" +
                       phrases[hint.index] + "'");
    }
    if (lit.atom.kind != Atom::Kind::kBinary) {
      if (subject != kGripper) {
        throw QueryError("'open'/'closed' only apply to the gripper, not '" + subject + "'");
      }
    }
    q.literals.push_back(std::move(lit));
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> entities_;
  std::vector<std::vector<std::string>> entity_tokens_;
  std::vector<std::vector<std::string>> relation_tokens_;
};

std::string predicate_text(const Literal& lit) {
  std::string out = lit.negated ? "not " : "";
  switch (lit.atom.kind) {
    case Atom::Kind::kGripperOpen: return out + "open";
    case Atom::Kind::kGripperClosed: return out + "closed";
    case Atom::Kind::kBinary:
      return out + std::string(phrase(lit.atom.relation)) + " the " + lit.atom.object;
  }
  return out;
}

Vec3 entity_position(const std::string& name, const WorldState& state) {
  if (name == kGripper) return state.gripper_pos;
  if (name == kTable) return world::constants::kTablePosition;
  if (name == kWall) return world::constants::kWallPosition;
  if (name == kGoal) return state.goal_pos;
  const world::ObjectState* obj = state.find(name);
  if (obj == nullptr) throw QueryError("object '" + name + "' is not present in the state");
  return obj->position;
}

}  // namespace

std::vector<std::string> entity_names(const TaskSpec& task) {
  std::vector<std::string> names{kGripper};
  for (const auto& o : task.objects) names.push_back(o.name);
  names.insert(names.end(), {kTable, kWall, kGoal});
  return names;
}

Query parse_query(const std::string& text, const TaskSpec& task) {
  return Parser(text, task).parse();
}

std::string render(const Literal& literal) {
  return "the " + literal.atom.subject + " is " + predicate_text(literal);
}

std::string render(const Query& query) {
  std::string out;
  const std::string* subject = nullptr;
  for (const auto& lit : query.literals) {
    if (subject == nullptr) {
      out = render(lit);
    } else if (*subject == lit.atom.subject) {
      out += " and " + predicate_text(lit);
    } else {
      out += " and " + render(lit);
    }
    subject = &lit.atom.subject;
  }
  return out;
}

bool eval_literal(const Literal& lit, const WorldState& state) {
  bool value = false;
  switch (lit.atom.kind) {
    case Atom::Kind::kGripperOpen:
      value = state.gripper_closure < tolerance::kClosedAt;
      break;
    case Atom::Kind::kGripperClosed:
      value = state.gripper_closure >= tolerance::kClosedAt;
      break;
    case Atom::Kind::kBinary:
      value = relation_holds<double>(lit.atom.relation, entity_position(lit.atom.subject, state),
                                     entity_position(lit.atom.object, state),
                                     lit.atom.subject == kTable, lit.atom.object == kTable);
      break;
  }
  return lit.negated ? !value : value;
}

bool eval_query(const Query& query, const WorldState& state) {
  if (query.literals.empty()) throw QueryError("empty query");
  // Evaluate every literal so a missing object is always reported.
  bool all = true;
  for (const auto& lit : query.literals) all = eval_literal(lit, state) && all;
  return all;
}

std::vector<std::string> supported_queries(const TaskSpec& task) {
  const auto entities = entity_names(task);
  std::vector<std::string> out;
  for (const Atom& a : {Atom::gripper_open(), Atom::gripper_closed()}) {
    out.push_back(render(Literal{false, a}));
    out.push_back(render(Literal{true, a}));
  }
  for (RelationKind rel : kAllRelations) {
    for (const auto& s : entities) {
      for (const auto& o : entities) {
        if (s == o) continue;
        const Atom a = Atom::binary(rel, s, o);
        out.push_back(render(Literal{false, a}));
        out.push_back(render(Literal{true, a}));
      }
    }
  }
  return out;
}

namespace {

// Content words only: articles, the copula and the possessive "robot's"
// carry no meaning here, and matching without them keeps "not" from being
// traded for a missing "is".
std::vector<std::string> content_words(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    static const std::set<std::string> kFiller{"the", "a", "an", "is", "robot", "robots", "s"};
    if (!kFiller.count(t)) out.push_back(t);
  }
  return out;
}

bool starts_with_entity(const std::vector<std::string>& words, const TaskSpec& task) {
  for (const auto& e : entity_names(task)) {
    const auto et = tokenize(e);
    if (words.size() >= et.size() && std::equal(et.begin(), et.end(), words.begin())) return true;
  }
  return false;
}

}  // namespace

std::string nearest_query(const std::string& text, const TaskSpec& task) {
  const auto supported = supported_queries(task);
  std::vector<std::string> keys;
  keys.reserve(supported.size());
  for (const auto& s : supported) {
    const auto w = content_words(tokenize(s));
    keys.push_back(join(w, 0, w.size()));
  }
  const auto tokens = tokenize(text);

  std::vector<std::vector<std::string>> parts(1);
  for (const auto& t : tokens) {
    if (t == "and") {
      parts.emplace_back();
    } else {
      parts.back().push_back(t);
    }
  }

  Query q;
  for (const auto& part : parts) {
    auto words = content_words(part);
    if (words.empty()) continue;
    // A conjunct without its own subject inherits the previous one.
    if (!q.literals.empty() && !starts_with_entity(words, task)) {
      const auto subject = tokenize(q.literals.back().atom.subject);
      words.insert(words.begin(), subject.begin(), subject.end());
    }
    const auto match = nearest(join(words, 0, words.size()), keys);
    Literal lit = parse_query(supported[match.index], task).literals.front();
    if (std::find(q.literals.begin(), q.literals.end(), lit) == q.literals.end()) {
      q.literals.push_back(std::move(lit));
    }
  }
  if (q.literals.empty()) {
    // Nothing but connectives and articles: match the raw text.
    return supported[nearest(join(tokens, 0, tokens.size()), supported).index];
  }
  return render(q);
}

}  // namespace lw::query
