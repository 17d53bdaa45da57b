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

#include "sympel/crf_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "sympel/corpus_io.h"
#include "sympel/error.h"
#include "sympel/text.h"

namespace sympel {
namespace {

constexpr char kMagic[4] = {'C', 'R', 'F', '1'};
constexpr uint32_t kVersion = 1;

class ByteWriter {
 public:
  void Bytes(std::string_view s) { out_.append(s); }
  void U32(uint32_t v) { Unsigned(v, 4); }
  void U64(uint64_t v) { Unsigned(v, 8); }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  std::string& str() { return out_; }

 private:
  void Unsigned(uint64_t v, int width) {
    for (int i = 0; i < width; ++i) {
      out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
  }
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::string_view Bytes(size_t n) {
    Need(n);
    std::string_view s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  uint32_t U32() { return static_cast<uint32_t>(Unsigned(4)); }
  uint64_t U64() { return Unsigned(8); }
  double F64() { return std::bit_cast<double>(U64()); }
  size_t position() const { return pos_; }

 private:
  void Need(size_t n) {
    if (data_.size() - pos_ < n) {
      throw Error(ErrorCode::kParseError,
                  "model file truncated at byte " + std::to_string(pos_));
    }
  }
  uint64_t Unsigned(int width) {
    Need(width);
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<uint64_t>(static_cast<unsigned char>(data_[pos_ + i]))
           << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string_view data_;
  size_t pos_ = 0;
};

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, '\t')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string SerializeCrfModel(const CrfModel& model) {
  ValidateCrfModel(model);
  const size_t L = model.num_labels();
  ByteWriter w;
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(kVersion);
  w.U32(static_cast<uint32_t>(L));
  for (const std::string& label : model.labels) {
    w.U32(static_cast<uint32_t>(label.size()));
    w.Bytes(label);
  }
  w.U32(model.feature_dim);
  for (double v : model.transitions) w.F64(v);
  for (double v : model.start_scores) w.F64(v);
  for (double v : model.end_scores) w.F64(v);
  uint64_t nnz = 0;
  for (double v : model.emission_weights) nnz += v != 0.0;
  w.U64(nnz);
  for (size_t i = 0; i < model.emission_weights.size(); ++i) {
    if (model.emission_weights[i] == 0.0) continue;
    w.U32(static_cast<uint32_t>(i / L));
    w.U32(static_cast<uint32_t>(i % L));
    w.F64(model.emission_weights[i]);
  }
  const uint64_t checksum = Fnv1a64(w.str());
  w.U64(checksum);
  return std::move(w.str());
}

CrfModel DeserializeCrfModel(const std::string& bytes) {
  if (bytes.size() < 8 || bytes.compare(0, 4, kMagic, 4) != 0) {
    throw Error(ErrorCode::kParseError, "not a CRF1 model file");
  }
  const std::string_view body(bytes.data(), bytes.size() - 8);
  ByteReader tail(std::string_view(bytes).substr(bytes.size() - 8));
  if (Fnv1a64(body) != tail.U64()) {
    throw Error(ErrorCode::kChecksumMismatch, "model file checksum mismatch");
  }

  ByteReader r(body);
  r.Bytes(4);
  const uint32_t version = r.U32();
  if (version != kVersion) {
    throw Error(ErrorCode::kParseError,
                "unsupported model version " + std::to_string(version));
  }
  const uint32_t L = r.U32();
  std::vector<std::string> labels;
  for (uint32_t i = 0; i < L; ++i) {
    const uint32_t length = r.U32();
    labels.emplace_back(r.Bytes(length));
  }
  const uint32_t feature_dim = r.U32();
  CrfModel model = CreateCrfModel(std::move(labels), feature_dim);
  for (double& v : model.transitions) v = r.F64();
  for (double& v : model.start_scores) v = r.F64();
  for (double& v : model.end_scores) v = r.F64();
  const uint64_t nnz = r.U64();
  for (uint64_t i = 0; i < nnz; ++i) {
    const uint32_t feature = r.U32();
    const uint32_t label = r.U32();
    const double weight = r.F64();
    if (feature >= feature_dim || label >= L) {
      throw Error(ErrorCode::kParseError, "emission weight index out of range");
    }
    model.emission_weights[static_cast<size_t>(feature) * L + label] = weight;
  }
  if (r.position() != body.size()) {
    throw Error(ErrorCode::kParseError, "trailing bytes in model file");
  }
  ValidateCrfModel(model);
  return model;
}

void SaveCrfModel(const CrfModel& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeCrfModel(model));
}

CrfModel LoadCrfModel(const std::filesystem::path& path) {
  try {
    return DeserializeCrfModel(ReadFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void WriteEmissions(std::ostream& out, const std::vector<std::string>& labels,
                    const std::vector<SentenceEmissions>& sentences) {
  out << "#labels";
  for (const std::string& label : labels) out << '\t' << label;
  out << '\n';
  std::ostringstream number;
  number.precision(17);
  for (const SentenceEmissions& s : sentences) {
    out << "sentence\t" << s.doc_id << '\t' << s.start << '\t'
        << s.scores.num_tokens() << '\n';
    for (size_t t = 0; t < s.scores.num_tokens(); ++t) {
      for (size_t l = 0; l < s.scores.num_labels(); ++l) {
        number.str("");
        number << s.scores.at(t, l);
        out << (l > 0 ? "\t" : "") << number.str();
      }
      out << '\n';
    }
  }
}

std::vector<SentenceEmissions> ReadEmissions(
    std::istream& in, const std::vector<std::string>& model_labels,
    const std::string& source_name) {
  std::string line;
  size_t line_number = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::kParseError,
                 source_name + ":" + std::to_string(line_number) + ": " + what);
  };

  if (!std::getline(in, line)) throw fail("empty emissions file");
  ++line_number;
  std::vector<std::string> header = SplitTabs(line);
  if (header.empty() || header[0] != "#labels") throw fail("missing #labels");
  header.erase(header.begin());
  std::vector<size_t> column_of(model_labels.size());
  for (size_t l = 0; l < model_labels.size(); ++l) {
    const auto it = std::find(header.begin(), header.end(), model_labels[l]);
    if (it == header.end()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  source_name + ": label " + model_labels[l] + " missing");
    }
    column_of[l] = static_cast<size_t>(it - header.begin());
  }

  std::vector<SentenceEmissions> out;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 4 || fields[0] != "sentence") {
      throw fail("expected a sentence header");
    }
    SentenceEmissions s;
    s.doc_id = fields[1];
    size_t num_tokens = 0;
    try {
      s.start = std::stoull(fields[2]);
      num_tokens = std::stoull(fields[3]);
    } catch (const std::exception&) {
      throw fail("bad sentence header");
    }
    s.scores = EmissionMatrix(num_tokens, model_labels.size());
    for (size_t t = 0; t < num_tokens; ++t) {
      if (!std::getline(in, line)) throw fail("truncated score block");
      ++line_number;
      const std::vector<std::string> row = SplitTabs(line);
      if (row.size() != header.size()) throw fail("wrong number of scores");
      for (size_t l = 0; l < model_labels.size(); ++l) {
        double v = 0.0;
        try {
          v = std::stod(row[column_of[l]]);
        } catch (const std::exception&) {
          throw fail("bad score \"" + row[column_of[l]] + "\"");
        }
        if (!std::isfinite(v)) throw fail("non-finite score");
        s.scores.at(t, l) = v;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace sympel
