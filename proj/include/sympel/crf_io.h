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

// CRF model file layout (all integers and floats little-endian):
//
//   "CRF1"                      magic
//   u32 version                 currently 1
//   u32 L, then L x (u32 byte length, UTF-8 label)
//   u32 feature_dim
//   f64[L*L] transitions        row-major, row = from label
//   f64[L] start, f64[L] end
//   u64 n, then n x (u32 feature index, u32 label, f64 weight)
//   u64 checksum                FNV-1a 64 of every preceding byte
//
// Emissions interchange (text, tab-separated), for scores produced by an
// external encoder:
//
//   #labels <TAB> O <TAB> B-SINTOMA <TAB> ...
//   sentence <TAB> doc_id <TAB> start <TAB> T
//   T rows of L scores
//
// Columns follow the #labels header and are remapped to model order on load.

#ifndef SYMPEL_CRF_IO_H_
#define SYMPEL_CRF_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sympel/crf.h"

namespace sympel {

std::string SerializeCrfModel(const CrfModel& model);
// Throws kParseError on truncation or bad magic, kChecksumMismatch.
CrfModel DeserializeCrfModel(const std::string& bytes);

void SaveCrfModel(const CrfModel& model, const std::filesystem::path& path);
CrfModel LoadCrfModel(const std::filesystem::path& path);

struct SentenceEmissions {
  std::string doc_id;
  size_t start = 0;
  EmissionMatrix scores;
};

void WriteEmissions(std::ostream& out, const std::vector<std::string>& labels,
                    const std::vector<SentenceEmissions>& sentences);

// Reorders columns into `model_labels` order. Throws kParseError,
// kDimensionMismatch when a model label is missing from the file.
std::vector<SentenceEmissions> ReadEmissions(
    std::istream& in, const std::vector<std::string>& model_labels,
    const std::string& source_name);

}  // namespace sympel

#endif  // SYMPEL_CRF_IO_H_
