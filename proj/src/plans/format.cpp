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

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

#include "lw/plans/plan.hpp"
#include "lw/query/query.hpp"

namespace lw::plans {

std::string to_string(PlanFormat format) {
  switch (format) {
    case PlanFormat::kPlainList: return "plain_list";
    case PlanFormat::kBasicPyMd: return "basic_py_md";
    case PlanFormat::kChainPy: return "chain_py";
  }
  return "";
}

PlanFormat parse_plan_format(const std::string& name) {
  for (auto f : kAllFormats) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown plan format: " + name +
                        " (expected plain_list, basic_py_md or chain_py)");
}

void validate(const ConditionalPlan& plan) {
  if (plan.steps.empty()) throw InvalidArgument("plan for " + plan.task + " has no steps");
  for (const auto& s : plan.steps) {
    if (s.condition.empty() || s.skill.empty()) {
      throw InvalidArgument("plan for " + plan.task + " has an empty condition or skill");
    }
  }
}

nlohmann::json to_json(const ConditionalPlan& plan) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : plan.steps) steps.push_back({{"condition", s.condition}, {"skill", s.skill}});
  return {{"task", plan.task}, {"description", plan.description}, {"steps", steps}};
}

ConditionalPlan plan_from_json(const nlohmann::json& doc) {
  try {
    ConditionalPlan plan{doc.value("task", ""), doc.value("description", ""), {}};
    for (const auto& s : doc.at("steps")) {
      plan.steps.push_back({s.at("condition").get<std::string>(), s.at("skill").get<std::string>()});
    }
    validate(plan);
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed plan document: ") + e.what());
  }
}

namespace {

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool is_article(const std::string& w) { return w == "the" || w == "a" || w == "an"; }

// Multi-word nouns, longest first, from every entity the tasks know about.
const std::vector<std::vector<std::string>>& nouns() {
  static const auto list = [] {
    std::set<std::string> names = {"drawer", "door", "window", "faucet"};
    for (const auto& t : world::all_tasks()) {
      for (const auto& n : query::entity_names(t)) names.insert(n);
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& n : names) out.push_back(words(n));
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
  }();
  return list;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

std::string identifier(const std::string& task) {
  std::string id;
  for (char c : task) id += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (id.empty() || std::isdigit(static_cast<unsigned char>(id[0]))) id = "task_" + id;
  return id;
}

}  // namespace

std::string skill_call_to_description(const std::string& call) {
  static const std::regex re(R"re(^\s*robot\.([A-Za-z][A-Za-z0-9_]*)\(\s*(?:"((?:[^"\\]|\\.)*)")?\s*\)\s*$)re");
  std::smatch m;
  if (!std::regex_match(call, m, re)) throw InvalidArgument("not a robot skill call: " + call);
  std::vector<std::string> parts;
  std::string method = m[1].str();
  for (std::size_t start = 0;;) {
    const auto pos = method.find('_', start);
    const auto piece = method.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    if (!piece.empty()) parts.push_back(piece);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (parts.empty()) throw InvalidArgument("not a robot skill call: " + call);
  const std::string verb = parts.front();
  std::vector<std::string> args(parts.begin() + 1, parts.end());
  for (auto& w : words(unescape(m[2].str()))) args.push_back(w);

  std::vector<std::string> out = {verb};
  for (std::size_t i = 0; i < args.size();) {
    std::size_t matched = 0;
    for (const auto& noun : nouns()) {
      if (i + noun.size() <= args.size() &&
          std::equal(noun.begin(), noun.end(), args.begin() + static_cast<std::ptrdiff_t>(i))) {
        matched = noun.size();
        break;
      }
    }
    if (matched > 0) {
      if (out.empty() || !is_article(out.back())) out.push_back("the");
      for (std::size_t k = 0; k < matched; ++k) out.push_back(args[i + k]);
      i += matched;
    } else {
      out.push_back(args[i++]);
    }
  }
  return join(out, " ");
}

std::string description_to_skill_call(const std::string& description) {
  const auto ws = words(description);
  if (ws.empty()) throw InvalidArgument("empty skill description");
  std::string verb;
  for (char c : ws.front()) verb += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  std::vector<std::string> args;
  for (std::size_t i = 1; i < ws.size(); ++i) {
    if (!is_article(ws[i])) args.push_back(ws[i]);
  }
  if (args.empty()) return "robot." + verb + "()";
  if (args.size() == 1 && args[0] == "gripper") return "robot." + verb + "_gripper()";
  return "robot." + verb + "(\"" + escape(join(args, " ")) + "\")";
}

std::string encode_header(const std::string& task, const std::string& description,
                          PlanFormat format) {
  const std::string comment = "# " + task + ": " + description + "\n";
  switch (format) {
    case PlanFormat::kPlainList:
      return comment;
    case PlanFormat::kBasicPyMd:
      return "```python\n" + comment + "def " + identifier(task) + "(robot):\n";
    case PlanFormat::kChainPy:
      return comment + "def " + identifier(task) + "(robot):\n";
  }
  return comment;
}

std::string encode_plan(const ConditionalPlan& plan, PlanFormat format) {
  validate(plan);
  std::string out = encode_header(plan.task, plan.description, format);
  switch (format) {
    case PlanFormat::kPlainList:
      for (const auto& s : plan.steps) out += "if " + s.condition + ": " + s.skill + "\n";
      break;
    case PlanFormat::kBasicPyMd:
      for (const auto& s : plan.steps) {
        out += "    if check(\"" + escape(s.condition) + "\"):\n";
        out += "        " + description_to_skill_call(s.skill) + "\n";
      }
      out += "```\n";
      break;
    case PlanFormat::kChainPy:
      out += "    # Steps:\n";
      for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        out += "    #  " + std::to_string(i + 1) + ". " + plan.steps[i].skill + "\n";
      }
      for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        out += std::string(i == 0 ? "    if" : "    elif") + " check(\"" +
               escape(plan.steps[i].condition) + "\"):\n";
        out += "        " + description_to_skill_call(plan.steps[i].skill) + "\n";
      }
      break;
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConditionalPlan decode_plan(const std::string& text, PlanFormat format) {
  static const std::regex header(R"(^\s*#\s*([A-Za-z0-9][A-Za-z0-9_-]*):\s*(.*\S)\s*$)");
  static const std::regex plain(R"(^\s*(?:[-*]\s*|\d+[.)]\s*)?if\s+(.+?)\s*:\s*(.*\S)\s*$)",
                                std::regex::icase);
  static const std::regex py_if(R"re(^\s*(?:el)?if\s+check\(\s*"((?:[^"\\]|\\.)*)"\s*\)\s*:\s*(.*)$)re");
  static const std::regex py_call(R"re(^\s*(robot\.[A-Za-z][A-Za-z0-9_]*\(.*\))\s*(?:#.*)?$)re");

  ConditionalPlan plan;
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);

  bool content_seen = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const std::string t = trim(line);
    std::smatch m;
    // Only the first line of content, after an optional fence, can be the header.
    if (!content_seen && !t.empty() && t.rfind("```", 0) != 0) {
      content_seen = true;
      if (std::regex_match(line, m, header)) {
        plan.task = m[1].str();
        plan.description = m[2].str();
        continue;
      }
    }
    if (format == PlanFormat::kPlainList) {
      if (std::regex_match(line, m, plain)) {
        const std::string cond = trim(m[1].str());
        const std::string skill = trim(m[2].str());
        if (!cond.empty() && !skill.empty()) plan.steps.push_back({cond, skill});
      }
      continue;
    }
    if (!std::regex_match(line, m, py_if)) continue;
    const std::string cond = trim(unescape(m[1].str()));
    std::string call = trim(m[2].str());
    if (call.empty() || call[0] == '#') {
      // The call sits on the next line that is neither blank nor a comment.
      call.clear();
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const std::string t = trim(lines[j]);
        if (t.empty() || t[0] == '#') continue;
        std::smatch c;
        if (std::regex_match(lines[j], c, py_call)) call = c[1].str();
        break;
      }
    }
    if (cond.empty() || call.empty()) continue;
    try {
      plan.steps.push_back({cond, skill_call_to_description(call)});
    } catch (const InvalidArgument&) {
      // Unreadable call; the step is skipped.
    }
  }
  if (plan.steps.empty()) {
    throw PlanDecodeError("no plan steps found in " + to_string(format) + " text", text);
  }
  return plan;
}

ConditionalPlan decode_completion(const std::string& completion, const world::TaskSpec& target,
                                  PlanFormat format) {
  const std::string header = encode_header(target.name, target.description, format);
  const bool has_header = completion.find(header) != std::string::npos;
  ConditionalPlan plan = decode_plan(has_header ? completion : header + completion, format);
  plan.task = target.name;
  plan.description = target.description;
  return plan;
}

}  // namespace lw::plans
