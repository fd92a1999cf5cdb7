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

#include <filesystem>
#include <optional>
#include <string>

#include "lw/common/error.hpp"
#include "lw/plans/plan.hpp"

namespace lw::plans {

inline constexpr double kDefaultTemperature = 0.7;
inline constexpr int kDefaultMaxTokens = 1024;
inline constexpr const char* kApiKeyEnv = "LW_LLM_API_KEY";

struct CompletionRequest {
  std::string prompt;
  double temperature = kDefaultTemperature;
  int max_tokens = kDefaultMaxTokens;
  int sample = 0;  // 0..3 for the four samples per (task, format)
};

struct CompletionResult {
  std::string text;
  std::string backend;
};

class MissingFixture : public Error {
 public:
  explicit MissingFixture(const std::string& message) : Error("missing_fixture", message) {}
};

class TransportError : public Error {
 public:
  explicit TransportError(const std::string& message) : Error("transport", message) {}
};

class HttpStatusError : public Error {
 public:
  HttpStatusError(int status, const std::string& message)
      : Error("http_status", message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Fixture file name: <fnv1a64(prompt) as hex>-<sample>.txt
std::string fixture_name(const std::string& prompt, int sample);

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual CompletionResult complete(const CompletionRequest& request) = 0;
};

// Serves stored completions byte for byte.
class ReplayBackend : public CompletionBackend {
 public:
  explicit ReplayBackend(std::filesystem::path dir);
  CompletionResult complete(const CompletionRequest& request) override;
  // Stores a completion under the request's key; returns the file written.
  std::filesystem::path store(const CompletionRequest& request, const std::string& text) const;

 private:
  std::filesystem::path dir_;
};

struct HttpConfig {
  std::string url;  // e.g. http://localhost:8080/v1/complete
  std::string api_key_env = kApiKeyEnv;
  int timeout_seconds = 60;
  // Completions are written here in replay layout when set.
  std::optional<std::filesystem::path> log_dir;
};

// POSTs {"prompt", "temperature", "max_tokens"} and reads "completion" from
// the JSON reply. The credential is sent as a bearer token and never logged.
class HttpBackend : public CompletionBackend {
 public:
  explicit HttpBackend(HttpConfig config);
  CompletionResult complete(const CompletionRequest& request) override;

 private:
  HttpConfig config_;
};

inline constexpr int kSamplesPerPrompt = 4;

// Decoded replay completions for the target's prompt (manual library
// exemplars), samples 0 .. samples-1. Throws MissingFixture or
// PlanDecodeError.
std::vector<ConditionalPlan> stored_plans(const std::filesystem::path& dir,
                                          const world::TaskSpec& target, PlanFormat format,
                                          int samples = kSamplesPerPrompt);

}  // namespace lw::plans
