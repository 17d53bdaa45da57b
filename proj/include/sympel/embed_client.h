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

// Client for a remote embedding service.
//
//   POST <url>/embed   {"texts": ["...", ...]}
//   200                {"dim": N, "vectors": [[...], ...]}  (input order)
//
// Requests are idempotent, so transport failures and 5xx responses are
// retried. Every response is checked for vector count and dimension.

#ifndef SYMPEL_EMBED_CLIENT_H_
#define SYMPEL_EMBED_CLIENT_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympel/embedding.h"

namespace sympel {

inline constexpr char kEmbedUrlEnv[] = "SYMPEL_EMBED_URL";

struct ServiceConfig {
  std::string url;  // e.g. http://127.0.0.1:8000
  size_t batch_size = 64;
  int max_attempts = 3;
  int retry_delay_ms = 200;
  int timeout_seconds = 60;
  std::optional<size_t> expected_dim;
};

// Reads kEmbedUrlEnv; empty when unset.
std::string EmbedServiceUrlFromEnv();

class ServiceEmbedder : public Embedder {
 public:
  explicit ServiceEmbedder(ServiceConfig cfg);

  std::string id() const override;
  // Throws kEmbedderError after exhausting retries, kDimensionMismatch when
  // the service changes dimension or returns malformed vectors.
  std::vector<std::vector<double>> Embed(
      std::span<const std::string> texts) override;

  std::optional<size_t> dim() const { return dim_; }

 private:
  std::vector<std::vector<double>> EmbedBatch(
      std::span<const std::string> texts);

  ServiceConfig cfg_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::optional<size_t> dim_;
};

}  // namespace sympel

#endif  // SYMPEL_EMBED_CLIENT_H_
