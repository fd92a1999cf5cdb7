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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lw/world/types.hpp"

namespace lw::pcbc {

inline constexpr int kLatentDim = 32;
inline constexpr int kVocabSize = 256;
inline constexpr int kHiddenDim = 64;
inline constexpr int kActionDim = 4;
inline constexpr int kDecoderInputDim = world::kObservationDim + kLatentDim;

// Learnable values shared by the plan-conditioned and descriptor-conditioned
// policies: the text encoder projection and a 2x64 tanh action decoder.
struct PolicyParams {
  Eigen::MatrixXd encoder;  // kLatentDim x kVocabSize
  Eigen::MatrixXd w1, b1;   // kHiddenDim x kDecoderInputDim, kHiddenDim x 1
  Eigen::MatrixXd w2, b2;   // kHiddenDim x kHiddenDim,       kHiddenDim x 1
  Eigen::MatrixXd w3, b3;   // kActionDim x kHiddenDim,       kActionDim x 1

  // Uniform(+-1/sqrt(fan_in)) per block from a counter-based stream.
  static PolicyParams init(std::uint64_t seed);
  static PolicyParams zeros();

  template <typename F>
  void for_each_block(F&& f) {
    f("encoder", encoder);
    f("w1", w1);
    f("b1", b1);
    f("w2", w2);
    f("b2", b2);
    f("w3", w3);
    f("b3", b3);
  }
  template <typename F>
  void for_each_block(F&& f) const {
    f("encoder", encoder);
    f("w1", w1);
    f("b1", b1);
    f("w2", w2);
    f("b2", b2);
    f("w3", w3);
    f("b3", b3);
  }

  std::size_t parameter_count() const;
  std::size_t decoder_parameter_count() const;
  bool all_finite() const;

  friend bool operator==(const PolicyParams& a, const PolicyParams& b);
};

}  // namespace lw::pcbc
