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

#include "lw/pcbc/params.hpp"

#include <cmath>

#include "lw/common/hash.hpp"
#include "lw/common/rng.hpp"

namespace lw::pcbc {

PolicyParams PolicyParams::zeros() {
  PolicyParams p;
  p.encoder = Eigen::MatrixXd::Zero(kLatentDim, kVocabSize);
  p.w1 = Eigen::MatrixXd::Zero(kHiddenDim, kDecoderInputDim);
  p.b1 = Eigen::MatrixXd::Zero(kHiddenDim, 1);
  p.w2 = Eigen::MatrixXd::Zero(kHiddenDim, kHiddenDim);
  p.b2 = Eigen::MatrixXd::Zero(kHiddenDim, 1);
  p.w3 = Eigen::MatrixXd::Zero(kActionDim, kHiddenDim);
  p.b3 = Eigen::MatrixXd::Zero(kActionDim, 1);
  return p;
}

PolicyParams PolicyParams::init(std::uint64_t seed) {
  PolicyParams p = zeros();
  p.for_each_block([&](const char* name, Eigen::MatrixXd& m) {
    CounterRng rng(seed, fnv1a64(name));
    // Biases share the fan-in of their weight matrix.
    const std::string n(name);
    int fan_in = static_cast<int>(m.cols());
    if (n == "b1") fan_in = kDecoderInputDim;
    if (n == "b2" || n == "b3") fan_in = kHiddenDim;
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.uniform(-bound, bound);
    }
  });
  return p;
}

std::size_t PolicyParams::parameter_count() const {
  std::size_t n = 0;
  for_each_block([&](const char*, const Eigen::MatrixXd& m) { n += static_cast<std::size_t>(m.size()); });
  return n;
}

std::size_t PolicyParams::decoder_parameter_count() const {
  return parameter_count() - static_cast<std::size_t>(encoder.size());
}

bool PolicyParams::all_finite() const {
  bool ok = true;
  for_each_block([&](const char*, const Eigen::MatrixXd& m) { ok = ok && m.allFinite(); });
  return ok;
}

bool operator==(const PolicyParams& a, const PolicyParams& b) {
  return a.encoder == b.encoder && a.w1 == b.w1 && a.b1 == b.b1 && a.w2 == b.w2 &&
         a.b2 == b.b2 && a.w3 == b.w3 && a.b3 == b.b3;
}

}  // namespace lw::pcbc
