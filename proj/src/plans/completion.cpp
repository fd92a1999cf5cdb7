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

#include "lw/plans/completion.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <regex>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "lw/common/hash.hpp"

namespace lw::plans {

std::string fixture_name(const std::string& prompt, int sample) {
  return to_hex(fnv1a64(prompt)) + "-" + std::to_string(sample) + ".txt";
}

ReplayBackend::ReplayBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}

CompletionResult ReplayBackend::complete(const CompletionRequest& request) {
  const auto path = dir_ / fixture_name(request.prompt, request.sample);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MissingFixture("no stored completion " + path.filename().string() + " in " +
                         dir_.string() + " (sample " + std::to_string(request.sample) + ")");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {text, "replay"};
}

std::filesystem::path ReplayBackend::store(const CompletionRequest& request,
                                           const std::string& text) const {
  std::filesystem::create_directories(dir_);
  const auto path = dir_ / fixture_name(request.prompt, request.sample);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
  return path;
}

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {}

CompletionResult HttpBackend::complete(const CompletionRequest& request) {
  static const std::regex url_re(R"(^(http://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.url, m, url_re)) {
    throw InvalidArgument("completion endpoint must be an http:// URL, got '" + config_.url + "'");
  }
  const std::string origin = m[1].str();
  const std::string path = m[2].matched ? m[2].str() : "/";

  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw InvalidArgument("credential variable " + config_.api_key_env + " is not set");
  }

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_bearer_token_auth(key);
  const nlohmann::json body = {{"prompt", request.prompt},
                               {"temperature", request.temperature},
                               {"max_tokens", request.max_tokens}};
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw TransportError("request to " + origin + path + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw HttpStatusError(res->status, "endpoint " + origin + path + " answered status " +
                                           std::to_string(res->status));
  }
  std::string text;
  try {
    text = nlohmann::json::parse(res->body).at("completion").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError("endpoint " + origin + path + " sent an unreadable reply: " + e.what());
  }
  if (config_.log_dir) ReplayBackend(*config_.log_dir).store(request, text);
  return {text, "http"};
}

std::vector<ConditionalPlan> stored_plans(const std::filesystem::path& dir,
                                          const world::TaskSpec& target, PlanFormat format,
                                          int samples) {
  ReplayBackend replay(dir);
  CompletionRequest request;
  request.prompt = build_prompt(target, format, manual_library());
  std::vector<ConditionalPlan> out;
  for (int k = 0; k < samples; ++k) {
    request.sample = k;
    out.push_back(decode_completion(replay.complete(request).text, target, format));
  }
  return out;
}

}  // namespace lw::plans
