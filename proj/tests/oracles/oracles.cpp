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


#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lw/world/constants.hpp"

namespace lw::oracle {
namespace {

std::vector<std::string> words(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::istringstream in(lower);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string joined(const std::vector<std::string>& w, std::size_t from, std::size_t to) {
  std::string s;
  for (std::size_t i = from; i < to; ++i) s += (s.empty() ? "" : " ") + w[i];
  return s;
}

struct P {
  double x, y, z;
};

P where(const std::string& name, const world::WorldState& s) {
  auto from = [](const Eigen::Vector3d& v) { return P{v.x(), v.y(), v.z()}; };
  if (name == "gripper") return from(s.gripper_pos);
  if (name == "goal") return from(s.goal_pos);
  if (name == "table") return from(world::constants::kTablePosition);
  if (name == "wall") return from(world::constants::kWallPosition);
  for (const auto& o : s.objects) {
    if (o.name == name) return from(o.position);
  }
  throw std::invalid_argument("unknown entity " + name);
}

bool relation(const std::string& rel, const std::string& an, const std::string& bn,
              const world::WorldState& s) {
  const P a = where(an, s), b = where(bn, s);
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
  const double flat = std::sqrt(dx * dx + dy * dy);
  if (rel == "near") return dist < 0.08;
  if (rel == "far from") return dist >= 0.08;
  if (rel == "left of") return a.x < b.x - 0.02;
  if (rel == "right of") return a.x > b.x + 0.02;
  if (rel == "in front of") return a.y < b.y - 0.02;
  if (rel == "behind") return a.y > b.y + 0.02;
  if (rel == "above") return a.z > b.z + 0.02 && flat < 0.06;
  if (rel == "below") return a.z < b.z - 0.02 && flat < 0.06;
  if (rel == "around") return flat < 0.03 && std::fabs(dz) < 0.03;
  if (rel == "touching") {
    const double table_top = world::constants::kTableHeight;
    if (bn == "table") return a.z < table_top + 0.01;
    if (an == "table") return b.z < table_top + 0.01;
    return dist < 0.01;
  }
  if (rel == "aligned in x with") return std::fabs(dx) < 0.01;
  if (rel == "aligned in y with") return std::fabs(dy) < 0.01;
  if (rel == "aligned in z with") return std::fabs(dz) < 0.01;
  throw std::invalid_argument("unknown relation " + rel);
}

}  // namespace

bool qaf(std::string_view sentence, const world::WorldState& state) {
  const auto w = words(sentence);
  std::vector<std::vector<std::string>> clauses(1);
  for (const auto& t : w) {
    if (t == "and") {
      clauses.emplace_back();
    } else {
      clauses.back().push_back(t);
    }
  }
  std::string subject;
  bool all = true;
  for (auto c : clauses) {
    if (!c.empty() && c.front() == "the") c.erase(c.begin());
    auto is = std::find(c.begin(), c.end(), "is");
    std::size_t rest = 0;
    if (is != c.end()) {
      subject = joined(c, 0, static_cast<std::size_t>(is - c.begin()));
      rest = static_cast<std::size_t>(is - c.begin()) + 1;
    }
    if (subject.empty() || rest >= c.size()) throw std::invalid_argument("bad clause");
    bool negate = false;
    if (c[rest] == "not") {
      negate = true;
      ++rest;
    }
    bool value = false;
    const std::string tail = joined(c, rest, c.size());
    if (tail == "open" || tail == "closed") {
      if (subject != "gripper") throw std::invalid_argument("only the gripper opens");
      value = (tail == "closed") == (state.gripper_closure >= 0.5);
    } else {
      auto the = std::find(c.begin() + static_cast<std::ptrdiff_t>(rest), c.end(), "the");
      if (the == c.end()) throw std::invalid_argument("no object in " + tail);
      const auto at = static_cast<std::size_t>(the - c.begin());
      value = relation(joined(c, rest, at), subject, joined(c, at + 1, c.size()), state);
    }
    all = all && (value != negate);
  }
  return all;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  auto fold = [](char c) { return std::tolower(static_cast<unsigned char>(c)); };
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (fold(a[i - 1]) == fold(b[j - 1]) ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

double attention_true(int n, int k, double scale) {
  return std::exp(scale) / (k * std::exp(scale) + (n - k));
}

double attention_false(int n, int k, double scale) {
  return 1.0 / (k * std::exp(scale) + (n - k));
}

double bc_loss(const pcbc::PolicyParams& p, const pcbc::Batch& batch) {
  const long B = batch.obs.cols();
  double total = 0.0;
  for (long col = 0; col < B; ++col) {
    std::vector<double> x;
    for (long i = 0; i < batch.obs.rows(); ++i) x.push_back(batch.obs(i, col));
    for (long r = 0; r < p.encoder.rows(); ++r) {
      double z = 0.0;
      for (long v = 0; v < p.encoder.cols(); ++v) z += p.encoder(r, v) * batch.text(v, col);
      x.push_back(z);
    }
    auto layer = [](const Eigen::MatrixXd& w, const Eigen::MatrixXd& b,
                    const std::vector<double>& in) {
      std::vector<double> out;
      for (long r = 0; r < w.rows(); ++r) {
        double acc = b(r, 0);
        for (long c = 0; c < w.cols(); ++c) acc += w(r, c) * in[static_cast<std::size_t>(c)];
        out.push_back(std::tanh(acc));
      }
      return out;
    };
    const auto y = layer(p.w3, p.b3, layer(p.w2, p.b2, layer(p.w1, p.b1, x)));
    for (long r = 0; r < batch.actions.rows(); ++r) {
      const double e = y[static_cast<std::size_t>(r)] - batch.actions(r, col);
      total += e * e;
    }
  }
  return total / static_cast<double>(B * batch.actions.rows());
}

}  // namespace lw::oracle
