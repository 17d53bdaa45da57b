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

// Linear-chain CRF over IOB2 labels.
//
// A path y_0..y_{T-1} scores
//   start[y_0] + sum_t E[t][y_t] + sum_t trans[y_t][y_{t+1}] + end[y_{T-1}]
// where E is the emission matrix. Emissions come either from the built-in
// linear model over hashed token features, or from an external encoder via
// the emissions interchange file (see crf_io.h).

#ifndef SYMPEL_CRF_H_
#define SYMPEL_CRF_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sympel/corpus_io.h"
#include "sympel/spans.h"
#include "sympel/textseg.h"

namespace sympel {

// T x L unnormalized log-potentials, row-major.
class EmissionMatrix {
 public:
  EmissionMatrix() = default;
  EmissionMatrix(size_t num_tokens, size_t num_labels)
      : num_tokens_(num_tokens),
        num_labels_(num_labels),
        scores_(num_tokens * num_labels, 0.0) {}

  size_t num_tokens() const { return num_tokens_; }
  size_t num_labels() const { return num_labels_; }

  double& at(size_t t, size_t label) { return scores_[t * num_labels_ + label]; }
  double at(size_t t, size_t label) const {
    return scores_[t * num_labels_ + label];
  }
  std::span<const double> row(size_t t) const {
    return std::span<const double>(scores_).subspan(t * num_labels_,
                                                    num_labels_);
  }

 private:
  size_t num_tokens_ = 0;
  size_t num_labels_ = 0;
  std::vector<double> scores_;
};

// Sorted, unique hashed feature indices; every feature has value 1.
using SparseFeatures = std::vector<uint32_t>;

inline constexpr uint32_t kDefaultFeatureDim = 1u << 18;

struct CrfModel {
  std::vector<std::string> labels;
  std::vector<double> transitions;  // L x L, row = from label
  std::vector<double> start_scores;
  std::vector<double> end_scores;
  uint32_t feature_dim = kDefaultFeatureDim;
  // Per-feature label weights, feature-major: [feature * L + label]. Held
  // densely in memory; only non-zero entries are persisted.
  std::vector<double> emission_weights;

  size_t num_labels() const { return labels.size(); }
  double transition(size_t from, size_t to) const {
    return transitions[from * labels.size() + to];
  }
  double& transition(size_t from, size_t to) {
    return transitions[from * labels.size() + to];
  }
  double emission_weight(uint32_t feature, size_t label) const {
    return emission_weights[static_cast<size_t>(feature) * labels.size() +
                            label];
  }

  // Index of `label`; throws kInvalidArgument when unknown.
  size_t LabelIndex(const std::string& label) const;

  bool operator==(const CrfModel&) const = default;
};

// "O" followed by B-/I- pairs for each type in sorted order.
std::vector<std::string> Iob2Labels(std::vector<std::string> entity_types);

// Zero-initialized model. Throws kInvalidArgument unless the label set
// contains "O" and every I-<t> has a matching B-<t>.
CrfModel CreateCrfModel(std::vector<std::string> labels,
                        uint32_t feature_dim = kDefaultFeatureDim);

// Throws kInvalidArgument on non-finite parameters, size mismatches, or a
// malformed label set.
void ValidateCrfModel(const CrfModel& model);

// Hashed features of the token at `position`: bias, lowercased form, shape
// class, boundary-padded character 3-grams, and the lowercased neighbors
// (sentinels at the sentence edges).
SparseFeatures Featurize(const Sentence& sentence, size_t position,
                         uint32_t feature_dim);
std::vector<SparseFeatures> FeaturizeSentence(const Sentence& sentence,
                                              uint32_t feature_dim);

EmissionMatrix ComputeEmissions(const CrfModel& model,
                                std::span<const SparseFeatures> features);

// allowed[from * L + to]; transitions into I-<t> need B-<t> or I-<t> first.
std::vector<bool> Iob2TransitionMask(const std::vector<std::string>& labels);
// Start positions may not carry an I- label.
std::vector<bool> Iob2StartMask(const std::vector<std::string>& labels);

// Log-partition over all L^T paths (restricted to IOB2-valid paths when
// `constrain_iob2`). Throws kDimensionMismatch, kInvalidArgument for T = 0.
double LogForward(const EmissionMatrix& emissions, const CrfModel& model,
                  bool constrain_iob2 = false);

double PathScore(const EmissionMatrix& emissions, const CrfModel& model,
                 std::span<const size_t> path);

struct ViterbiResult {
  std::vector<size_t> path;
  TagSequence tags;
  double score = 0.0;
};

// Maximum-score path. Ties resolve to the lowest label index at every
// backpointer and at the final position.
ViterbiResult Viterbi(const EmissionMatrix& emissions, const CrfModel& model,
                      bool constrain_iob2 = true);

// Per-token and per-transition posterior marginals.
struct Marginals {
  double log_partition = 0.0;
  std::vector<double> node;  // T x L
  std::vector<double> edge;  // (T-1) x L x L
};
Marginals ForwardBackward(const EmissionMatrix& emissions,
                          const CrfModel& model, bool constrain_iob2 = false);

struct CrfExample {
  std::vector<SparseFeatures> features;
  std::vector<size_t> gold;  // label indices
};

// Featurizes the sentence and encodes its mentions as gold label indices.
// Throws kInvalidArgument when a mention type has no label in the model.
CrfExample MakeExample(const CrfModel& model, const TaggedSentence& sentence);

struct CrfGradient {
  std::vector<double> transitions;
  std::vector<double> start_scores;
  std::vector<double> end_scores;
  std::map<uint32_t, std::vector<double>> emission_weights;  // per label
};

struct NllResult {
  double nll = 0.0;
  CrfGradient gradient;
};

// Objective sum_i (log Z_i - score(gold_i)) + (l2 / 2) * ||theta||^2 and its
// exact gradient (forward-backward expected counts minus gold counts plus
// l2 * theta). Throws kDimensionMismatch, kInvalidTagSequence.
NllResult NllAndGradient(const CrfModel& model,
                         std::span<const CrfExample> examples, double l2,
                         bool constrain_iob2 = false);

struct TrainConfig {
  double learning_rate = 0.1;
  double l2_penalty = 1e-6;
  int epochs = 10;
  size_t batch_size = 16;
  uint64_t seed = 13;
  bool constrain_iob2 = true;
  uint32_t feature_dim = kDefaultFeatureDim;
};

struct TrainHistory {
  // Mean per-sentence objective over the training set after each epoch.
  std::vector<double> epoch_objective;
};

// Mini-batch gradient descent from zero-initialized parameters, visiting
// examples in a seeded shuffled order each epoch. The labels are derived from
// the entity types present in `data`. Throws kEmptyDataset,
// kInvalidArgument.
CrfModel TrainCrf(std::span<const TaggedSentence> data, const TrainConfig& cfg,
                  TrainHistory* history = nullptr);

// Trains an existing model in place on prepared examples.
void TrainCrfExamples(CrfModel* model, std::span<const CrfExample> examples,
                      const TrainConfig& cfg, TrainHistory* history = nullptr);

// featurize -> emissions -> viterbi -> tolerant IOB2 decode.
std::vector<Mention> TagSentences(const CrfModel& model,
                                  std::span<const Sentence> sentences,
                                  bool constrain_iob2 = true);

// Decodes externally supplied emissions for one sentence.
std::vector<Mention> TagWithEmissions(const CrfModel& model,
                                      const Sentence& sentence,
                                      const EmissionMatrix& emissions,
                                      bool constrain_iob2 = true);

}  // namespace sympel

#endif  // SYMPEL_CRF_H_
