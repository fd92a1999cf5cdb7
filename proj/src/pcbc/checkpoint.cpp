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

#include "lw/pcbc/checkpoint.hpp"

#include <fstream>

#include "lw/common/error.hpp"

namespace lw::pcbc {

namespace {

constexpr const char* kFormat = "lw-checkpoint";
constexpr int kVersion = 1;

}  // namespace

nlohmann::json to_json(const Checkpoint& ckpt) {
  nlohmann::json blocks = nlohmann::json::array();
  ckpt.params.for_each_block([&](const char* name, const Eigen::MatrixXd& m) {
    std::vector<double> values(m.data(), m.data() + m.size());  // column-major
    blocks.push_back({{"name", name}, {"shape", {m.rows(), m.cols()}}, {"values", values}});
  });
  return {{"format", kFormat},
          {"version", kVersion},
          {"arch", to_string(ckpt.arch)},
          {"steps", ckpt.steps},
          {"rng",
           {{"seed", ckpt.rng.seed()}, {"stream", ckpt.rng.stream()}, {"counter", ckpt.rng.counter()}}},
          {"blocks", blocks},
          {"meta", ckpt.meta}};
}

Checkpoint checkpoint_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format") != kFormat) throw InvalidArgument("not a checkpoint document");
    if (doc.at("version").get<int>() != kVersion) {
      throw InvalidArgument("unsupported checkpoint version " + doc.at("version").dump());
    }
    Checkpoint c;
    c.arch = parse_arch(doc.at("arch").get<std::string>());
    c.steps = doc.at("steps").get<std::uint64_t>();
    const auto& r = doc.at("rng");
    c.rng = CounterRng(r.at("seed").get<std::uint64_t>(), r.at("stream").get<std::uint64_t>(),
                       r.at("counter").get<std::uint64_t>());
    c.params = PolicyParams::zeros();
    const auto& blocks = doc.at("blocks");
    std::size_t seen = 0;
    c.params.for_each_block([&](const char* name, Eigen::MatrixXd& m) {
      const auto it = std::find_if(blocks.begin(), blocks.end(),
                                   [&](const nlohmann::json& b) { return b.at("name") == name; });
      if (it == blocks.end()) throw InvalidArgument(std::string("checkpoint lacks block ") + name);
      const auto shape = it->at("shape").get<std::vector<Eigen::Index>>();
      if (shape.size() != 2 || shape[0] != m.rows() || shape[1] != m.cols()) {
        throw InvalidArgument(std::string("checkpoint block ") + name + " has the wrong shape");
      }
      const auto values = it->at("values").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(values.size()) != m.size()) {
        throw InvalidArgument(std::string("checkpoint block ") + name + " has the wrong size");
      }
      std::copy(values.begin(), values.end(), m.data());
      ++seen;
    });
    if (seen != blocks.size()) throw InvalidArgument("checkpoint has unexpected blocks");
    if (!c.params.all_finite()) throw InvalidArgument("checkpoint holds non-finite values");
    c.meta = doc.value("meta", nlohmann::json::object());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(ckpt).dump() << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("malformed checkpoint " + path.string() + ": " + e.what());
  }
  return checkpoint_from_json(doc);
}

}  // namespace lw::pcbc
