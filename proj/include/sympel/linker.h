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

// Two-stage entity linking: exact alias match against the knowledge base,
// then cosine nearest neighbour over alias embeddings. The second stage can
// score each alias against three views of the mention (all tokens, the
// leading window and the trailing window) combined with convex weights.

#ifndef SYMPEL_LINKER_H_
#define SYMPEL_LINKER_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sympel/embedding.h"
#include "sympel/kb.h"
#include "sympel/spans.h"

namespace sympel {

// Throws kDimensionMismatch, kZeroVector.
double Cosine(std::span<const double> a, std::span<const double> b);

struct ScoredRecord {
  size_t index = 0;
  double score = 0.0;

  bool operator==(const ScoredRecord&) const = default;
};

// Cosine of `query` against every store row, in record order.
std::vector<double> CosineScan(std::span<const double> query,
                               const EmbeddingStore& store);

// Exact top-k by cosine, descending; equal scores keep the lower index.
// Throws kEmptyStore, kDimensionMismatch, kZeroVector.
std::vector<ScoredRecord> Nearest(std::span<const double> query,
                                  const EmbeddingStore& store, size_t k);

struct WindowWeights {
  double w_full = 0.75;
  double w_first = 0.17;
  double w_last = 0.08;
  double window_fraction = 0.75;

  // Scales the three weights to sum to one.
  static WindowWeights Normalized(double full, double first, double last,
                                  double window_fraction = 0.75);
  // Throws kInvalidArgument unless the weights are non-negative, sum to 1
  // within 1e-9, and the fraction lies in (0, 1].
  void Validate() const;
};

struct MentionViews {
  std::string full;
  std::string first;
  std::string last;
};

// Window length is max(1, ceil(fraction * n)); views join tokens with single
// spaces. Throws kEmptyMention, kInvalidArgument.
MentionViews WindowViews(std::span<const std::string> tokens, double fraction);
// Tokenizes `mention_text` first.
MentionViews WindowViews(const std::string& mention_text, double fraction);

// w_full cos(full, c) + w_first cos(first, c) + w_last cos(last, c).
double ScoreSliding(std::span<const double> full, std::span<const double> first,
                    std::span<const double> last,
                    std::span<const double> candidate,
                    const WindowWeights& weights);

enum class LinkMethod { kExact, kCosine, kCosineWindow, kAbstain };
std::string_view LinkMethodName(LinkMethod method);

struct LinkerConfig {
  bool use_sliding_window = false;
  WindowWeights weights;
  std::optional<double> abstain_threshold;
  size_t top_k = 5;
};

struct LinkPrediction {
  Mention mention;
  std::string code;
  double score = 0.0;
  std::string matched_alias;
  LinkMethod method = LinkMethod::kCosine;
  std::vector<ScoredRecord> candidates;  // similarity stage only
};

// Among several exact-match codes, the one with the most aliases wins;
// remaining ties go to the lexicographically smallest code.
std::string ResolveAmbiguousCodes(const KnowledgeBase& kb,
                                  const std::vector<std::string>& codes);

// Stage 1: exact lookup. Stage 2: embed the mention view(s), score every
// record and return the code of the best one (lowest index on ties). With an
// abstain threshold, a best score below it yields NO_CODE.
// Throws kDimensionMismatch when the store is not aligned with the KB,
// kEmbedderError with mention context when embedding fails.
LinkPrediction Link(const Mention& mention, const KnowledgeBase& kb,
                    const EmbeddingStore& store, Embedder& embedder,
                    const LinkerConfig& cfg);

std::vector<LinkPrediction> LinkAll(std::span<const Mention> mentions,
                                    const KnowledgeBase& kb,
                                    const EmbeddingStore& store,
                                    Embedder& embedder,
                                    const LinkerConfig& cfg);

struct GridPoint {
  WindowWeights weights;
  double accuracy = 0.0;
};

struct GridSearchResult {
  WindowWeights best;
  double accuracy = 0.0;
  double baseline_accuracy = 0.0;  // at (1, 0, 0)
  std::vector<GridPoint> evaluated;
};

// Exhaustive search over the simplex grid with spacing `step` (which must
// divide 1). Exact matches are fixed across the grid; the similarity stage
// embeds each mention's views once. Accuracy ties prefer larger w_full, then
// larger w_first. Throws kEmptyValidation, kInvalidArgument.
GridSearchResult GridSearchWeights(
    std::span<const std::pair<Mention, std::string>> validation,
    const KnowledgeBase& kb, const EmbeddingStore& store, Embedder& embedder,
    double step = 0.01, double window_fraction = 0.75);

}  // namespace sympel

#endif  // SYMPEL_LINKER_H_
