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

// Alias embedding storage and embedders.
//
// Binary embedding file (little-endian):
//   "EMB1", u32 dim, u32 count, then count x (u32 record index, dim x f32).
// Record indices must form a permutation of [0, count).
//
// Debug text format: a "#dim=<N>\tprovider=<id>" line followed by one
// "<index>\t<v0>\t<v1>..." line per record.

#ifndef SYMPEL_EMBEDDING_H_
#define SYMPEL_EMBEDDING_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sympel {

class KnowledgeBase;

// Row-major matrix of unit-norm vectors aligned with a KB's records.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  // Throws kInvalidArgument when a row norm is not within 1e-6 of 1 or the
  // data size is not a multiple of dim.
  EmbeddingStore(size_t dim, std::string provider_id, std::vector<float> data);

  size_t dim() const { return dim_; }
  size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  const std::string& provider_id() const { return provider_id_; }
  std::span<const float> row(size_t i) const {
    return std::span<const float>(data_).subspan(i * dim_, dim_);
  }
  double row_norm(size_t i) const { return norms_[i]; }
  const std::vector<float>& data() const { return data_; }

 private:
  size_t dim_ = 0;
  std::string provider_id_;
  std::vector<float> data_;
  std::vector<double> norms_;
};

inline constexpr double kUnitNormTolerance = 1e-6;

std::string SerializeEmbeddings(const EmbeddingStore& store);
EmbeddingStore DeserializeEmbeddings(const std::string& bytes,
                                     const std::string& provider_id = "file");
void SaveEmbeddings(const EmbeddingStore& store,
                    const std::filesystem::path& path);
EmbeddingStore LoadEmbeddings(const std::filesystem::path& path);

void WriteEmbeddingsDebug(std::ostream& out, const EmbeddingStore& store);
EmbeddingStore ReadEmbeddingsDebug(std::istream& in,
                                   const std::string& source_name);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string id() const = 0;
  // One L2-normalized vector per text, in input order.
  virtual std::vector<std::vector<double>> Embed(
      std::span<const std::string> texts) = 0;
};

// Character 3-gram hashing embedder. Texts are normalized (see
// NormalizeSurface), padded with '#' on both sides, and every code point
// 3-gram adds 1 to bucket FNV-1a(trigram) mod dim before L2 normalization.
// Throws kInvalidArgument when dim < 16, kEmptyText for blank input.
std::vector<std::vector<double>> EmbedStub(std::span<const std::string> texts,
                                           size_t dim);

class StubEmbedder : public Embedder {
 public:
  explicit StubEmbedder(size_t dim = 256);
  std::string id() const override;
  std::vector<std::vector<double>> Embed(
      std::span<const std::string> texts) override;

 private:
  size_t dim_;
};

// Embeds every record surface in batches and returns the aligned store.
EmbeddingStore EmbedKnowledgeBase(const KnowledgeBase& kb, Embedder& embedder,
                                  size_t batch_size = 256);

}  // namespace sympel

#endif  // SYMPEL_EMBEDDING_H_
