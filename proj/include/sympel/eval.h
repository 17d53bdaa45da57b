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

#ifndef SYMPEL_EVAL_H_
#define SYMPEL_EVAL_H_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sympel/linker.h"
#include "sympel/spans.h"

namespace sympel {

struct NerMetrics {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t gold_duplicates_removed = 0;
  size_t predicted_duplicates_removed = 0;
};

// Strict matching on (doc_id, start, end, entity_type), micro-averaged.
// Duplicate spans are removed from both sides before counting; degenerate
// denominators give 0.
NerMetrics ComputeNerMetrics(std::span<const Mention> gold,
                             std::span<const Mention> predicted);

struct LinkingReport {
  size_t total = 0;
  size_t correct = 0;
  double accuracy = 0.0;
  bool include_no_code = false;
  std::map<std::string, size_t> predicted_by_method;
  std::map<std::string, size_t> correct_by_method;
};

// A prediction for a gold mention is found by (doc_id, start, end). When
// include_no_code is false, gold NO_CODE mentions are left out of the
// denominator. Throws kMissingPrediction naming the uncovered mentions.
LinkingReport ComputeLinkingAccuracy(
    std::span<const Mention> gold, std::span<const LinkPrediction> predictions,
    bool include_no_code);

struct ExperimentRun {
  std::string name;
  std::vector<std::pair<std::string, double>> metrics;
};

struct ExperimentTable {
  std::string tsv;
  std::string text;  // aligned columns, per-column maxima marked with '*'
};

// Columns are the union of metric names in first-seen order; missing cells
// print "-".
ExperimentTable FormatExperimentReport(std::span<const ExperimentRun> runs);

}  // namespace sympel

#endif  // SYMPEL_EVAL_H_
