//
// Copyright 2026 The Sympel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "sympel/embed_client.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sympel/error.h"

namespace sympel {

std::string EmbedServiceUrlFromEnv() {
  const char* value = std::getenv(kEmbedUrlEnv);
  return value == nullptr ? std::string() : std::string(value);
}

ServiceEmbedder::ServiceEmbedder(ServiceConfig cfg) : cfg_(std::move(cfg)) {
  const size_t scheme = cfg_.url.find("://");
  if (cfg_.url.empty() || scheme == std::string::npos ||
      cfg_.url.compare(0, scheme, "http") != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding service URL must be http://host:port[/path], got \"" +
                    cfg_.url + "\"");
  }
  if (cfg_.batch_size == 0 || cfg_.max_attempts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "invalid service configuration");
  }
  const size_t slash = cfg_.url.find('/', scheme + 3);
  scheme_host_port_ = cfg_.url.substr(0, slash);
  if (slash != std::string::npos) path_prefix_ = cfg_.url.substr(slash);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') {
    path_prefix_.pop_back();
  }
  dim_ = cfg_.expected_dim;
}

std::string ServiceEmbedder::id() const { return "service:" + cfg_.url; }

std::vector<std::vector<double>> ServiceEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (size_t begin = 0; begin < texts.size(); begin += cfg_.batch_size) {
    const size_t n = std::min(cfg_.batch_size, texts.size() - begin);
    for (auto& v : EmbedBatch(texts.subspan(begin, n))) {
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<std::vector<double>> ServiceEmbedder::EmbedBatch(
    std::span<const std::string> texts) {
  nlohmann::json request;
  request["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  const std::string body = request.dump();

  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(cfg_.timeout_seconds, 0);
  client.set_read_timeout(cfg_.timeout_seconds, 0);

  std::string last_error;
  for (int attempt = 0; attempt < cfg_.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(cfg_.retry_delay_ms));
    }
    auto response =
        client.Post(path_prefix_ + "/embed", body, "application/json");
    if (!response) {
      last_error = "transport error: " + httplib::to_string(response.error());
      continue;
    }
    if (response->status >= 500) {
      last_error = "HTTP " + std::to_string(response->status);
      continue;
    }
    if (response->status != 200) {
      throw Error(ErrorCode::kEmbedderError,
                  "embedding service rejected request: HTTP " +
                      std::to_string(response->status) + " " + response->body);
    }

    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(response->body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kEmbedderError,
                  std::string("malformed service response: ") + e.what());
    }
    if (!reply.contains("dim") || !reply.contains("vectors") ||
        !reply["vectors"].is_array()) {
      throw Error(ErrorCode::kEmbedderError,
                  "service response lacks dim/vectors");
    }
    size_t dim = 0;
    std::vector<std::vector<double>> vectors;
    try {
      dim = reply["dim"].get<size_t>();
      if (dim_.has_value() && *dim_ != dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "service dim " + std::to_string(dim) + ", expected " +
                        std::to_string(*dim_));
      }
      if (reply["vectors"].size() != texts.size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "service returned " +
                        std::to_string(reply["vectors"].size()) +
                        " vectors for " + std::to_string(texts.size()) +
                        " texts");
      }
      vectors.reserve(texts.size());
      for (const auto& v : reply["vectors"]) {
        std::vector<double> vec = v.get<std::vector<double>>();
        if (vec.size() != dim) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "vector of length " + std::to_string(vec.size()) +
                          " in a dim " + std::to_string(dim) + " response");
        }
        double norm = 0.0;
        for (double x : vec) norm += x * x;
        if (norm == 0.0 || !std::isfinite(norm)) {
          throw Error(ErrorCode::kZeroVector, "service returned a zero vector");
        }
        norm = std::sqrt(norm);
        for (double& x : vec) x /= norm;
        vectors.push_back(std::move(vec));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kEmbedderError,
                  std::string("malformed service response: ") + e.what());
    }
    dim_ = dim;
    return vectors;
  }
  throw Error(ErrorCode::kEmbedderError,
              "embedding service unavailable after " +
                  std::to_string(cfg_.max_attempts) + " attempts (" +
                  last_error + ")");
}

}  // namespace sympel
