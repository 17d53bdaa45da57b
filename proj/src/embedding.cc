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

#include "sympel/embedding.h"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sympel/corpus_io.h"
#include "sympel/error.h"
#include "sympel/kb.h"
#include "sympel/text.h"

namespace sympel {
namespace {

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>(v >> (8 * i)));
}

uint32_t GetU32(std::string_view bytes, size_t pos) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<uint32_t>(static_cast<unsigned char>(bytes[pos + i]))
         << (8 * i);
  }
  return v;
}

}  // namespace

EmbeddingStore::EmbeddingStore(size_t dim, std::string provider_id,
                               std::vector<float> data)
    : dim_(dim), provider_id_(std::move(provider_id)), data_(std::move(data)) {
  if (dim_ == 0 || data_.size() % dim_ != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding data is not a whole number of rows of dim " +
                    std::to_string(dim_));
  }
  norms_.resize(size());
  for (size_t i = 0; i < size(); ++i) {
    double sum = 0.0;
    for (float v : row(i)) sum += static_cast<double>(v) * v;
    norms_[i] = std::sqrt(sum);
    if (!(std::abs(norms_[i] - 1.0) <= kUnitNormTolerance)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "embedding row " + std::to_string(i) + " has norm " +
                      std::to_string(norms_[i]));
    }
  }
}

std::string SerializeEmbeddings(const EmbeddingStore& store) {
  std::string out = "EMB1";
  PutU32(&out, static_cast<uint32_t>(store.dim()));
  PutU32(&out, static_cast<uint32_t>(store.size()));
  for (size_t i = 0; i < store.size(); ++i) {
    PutU32(&out, static_cast<uint32_t>(i));
    for (float v : store.row(i)) PutU32(&out, std::bit_cast<uint32_t>(v));
  }
  return out;
}

EmbeddingStore DeserializeEmbeddings(const std::string& bytes,
                                     const std::string& provider_id) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "EMB1") != 0) {
    throw Error(ErrorCode::kParseError, "not an EMB1 embedding file");
  }
  const size_t dim = GetU32(bytes, 4);
  const size_t count = GetU32(bytes, 8);
  const size_t record_bytes = 4 + 4 * dim;
  if (dim == 0 || bytes.size() != 12 + count * record_bytes) {
    throw Error(ErrorCode::kParseError, "embedding file size mismatch");
  }
  std::vector<float> data(count * dim);
  std::vector<bool> seen(count, false);
  for (size_t r = 0; r < count; ++r) {
    const size_t pos = 12 + r * record_bytes;
    const size_t index = GetU32(bytes, pos);
    if (index >= count || seen[index]) {
      throw Error(ErrorCode::kParseError,
                  "bad or repeated record index " + std::to_string(index));
    }
    seen[index] = true;
    for (size_t d = 0; d < dim; ++d) {
      data[index * dim + d] =
          std::bit_cast<float>(GetU32(bytes, pos + 4 + 4 * d));
    }
  }
  return EmbeddingStore(dim, provider_id, std::move(data));
}

void SaveEmbeddings(const EmbeddingStore& store,
                    const std::filesystem::path& path) {
  WriteFile(path, SerializeEmbeddings(store));
}

EmbeddingStore LoadEmbeddings(const std::filesystem::path& path) {
  try {
    return DeserializeEmbeddings(ReadFile(path), "file:" + path.string());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void WriteEmbeddingsDebug(std::ostream& out, const EmbeddingStore& store) {
  out << "#dim=" << store.dim() << "\tprovider=" << store.provider_id()
      << "\n";
  std::ostringstream number;
  number.precision(9);
  for (size_t i = 0; i < store.size(); ++i) {
    out << i;
    for (float v : store.row(i)) {
      number.str("");
      number << v;
      out << '\t' << number.str();
    }
    out << '\n';
  }
}

EmbeddingStore ReadEmbeddingsDebug(std::istream& in,
                                   const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("#dim=", 0) != 0) {
    throw Error(ErrorCode::kParseError, source_name + ": missing #dim header");
  }
  const size_t tab = line.find('\t');
  size_t dim = 0;
  try {
    dim = std::stoull(line.substr(5, tab - 5));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, source_name + ": bad dim");
  }
  std::string provider = "debug";
  if (tab != std::string::npos && line.compare(tab + 1, 9, "provider=") == 0) {
    provider = line.substr(tab + 10);
  }
  std::vector<float> data;
  size_t expected = 0;
  size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream fields(line);
    size_t index = 0;
    fields >> index;
    if (!fields || index != expected) {
      throw Error(ErrorCode::kParseError,
                  source_name + ":" + std::to_string(line_number) +
                      ": expected record " + std::to_string(expected));
    }
    for (size_t d = 0; d < dim; ++d) {
      float v = 0;
      if (!(fields >> v)) {
        throw Error(ErrorCode::kParseError,
                    source_name + ":" + std::to_string(line_number) +
                        ": short row");
      }
      data.push_back(v);
    }
    ++expected;
  }
  return EmbeddingStore(dim, provider, std::move(data));
}

std::vector<std::vector<double>> EmbedStub(std::span<const std::string> texts,
                                           size_t dim) {
  if (dim < 16) {
    throw Error(ErrorCode::kInvalidArgument, "stub embedder needs dim >= 16");
  }
  std::vector<std::vector<double>> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    const std::string normalized = NormalizeSurface(text);
    if (normalized.empty()) {
      throw Error(ErrorCode::kEmptyText, "cannot embed blank text");
    }
    const std::u32string padded = U"#" + DecodeUtf8(normalized) + U"#";
    std::vector<double> v(dim, 0.0);
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
      v[Fnv1a64(EncodeUtf8(padded.substr(i, 3))) % dim] += 1.0;
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

StubEmbedder::StubEmbedder(size_t dim) : dim_(dim) {
  if (dim_ < 16) {
    throw Error(ErrorCode::kInvalidArgument, "stub embedder needs dim >= 16");
  }
}

std::string StubEmbedder::id() const {
  return "stub-trigram-" + std::to_string(dim_);
}

std::vector<std::vector<double>> StubEmbedder::Embed(
    std::span<const std::string> texts) {
  return EmbedStub(texts, dim_);
}

EmbeddingStore EmbedKnowledgeBase(const KnowledgeBase& kb, Embedder& embedder,
                                  size_t batch_size) {
  if (kb.empty()) throw Error(ErrorCode::kEmptyStore, "knowledge base is empty");
  std::vector<float> data;
  size_t dim = 0;
  std::vector<std::string> batch;
  for (size_t begin = 0; begin < kb.size(); begin += batch_size) {
    const size_t end = std::min(kb.size(), begin + batch_size);
    batch.clear();
    for (size_t i = begin; i < end; ++i) {
      batch.push_back(kb.records()[i].surface);
    }
    const std::vector<std::vector<double>> vectors = embedder.Embed(batch);
    if (vectors.size() != batch.size()) {
      throw Error(ErrorCode::kEmbedderError,
                  "embedder returned " + std::to_string(vectors.size()) +
                      " vectors for " + std::to_string(batch.size()) +
                      " texts");
    }
    for (const std::vector<double>& v : vectors) {
      if (dim == 0) dim = v.size();
      if (v.size() != dim || dim == 0) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "embedder returned inconsistent dimensions");
      }
      double norm = 0.0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm == 0.0) {
        throw Error(ErrorCode::kZeroVector, "embedder returned a zero vector");
      }
      for (double x : v) data.push_back(static_cast<float>(x / norm));
    }
  }
  return EmbeddingStore(dim, embedder.id(), std::move(data));
}

}  // namespace sympel
