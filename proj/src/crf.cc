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

#include "sympel/crf.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "sympel/error.h"
#include "sympel/random.h"
#include "sympel/text.h"

namespace sympel {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogSumExp(std::span<const double> values) {
  double max = kNegInf;
  for (double v : values) max = std::max(max, v);
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max);
  return max + std::log(sum);
}

void CheckEmissions(const EmissionMatrix& emissions, const CrfModel& model) {
  if (emissions.num_labels() != model.num_labels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "emissions have " + std::to_string(emissions.num_labels()) +
                    " labels, model has " +
                    std::to_string(model.num_labels()));
  }
  if (emissions.num_tokens() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty emission matrix");
  }
}

// Transition and start scores with disallowed entries set to -inf.
struct EffectiveScores {
  std::vector<double> transitions;
  std::vector<double> start;
};

EffectiveScores Effective(const CrfModel& model, bool constrain_iob2) {
  EffectiveScores s{model.transitions, model.start_scores};
  if (constrain_iob2) {
    const std::vector<bool> trans_mask = Iob2TransitionMask(model.labels);
    const std::vector<bool> start_mask = Iob2StartMask(model.labels);
    for (size_t i = 0; i < trans_mask.size(); ++i) {
      if (!trans_mask[i]) s.transitions[i] = kNegInf;
    }
    for (size_t i = 0; i < start_mask.size(); ++i) {
      if (!start_mask[i]) s.start[i] = kNegInf;
    }
  }
  return s;
}

std::string ShapeOf(const std::u32string& token) {
  std::string shape;
  char last = 0;
  for (char32_t c : token) {
    char cls;
    if (IsDigit(c)) {
      cls = 'd';
    } else if (IsUpper(c)) {
      cls = 'X';
    } else if (IsAlpha(c)) {
      cls = 'x';
    } else {
      cls = c < 0x80 ? static_cast<char>(c) : '*';
    }
    if (cls != last) shape.push_back(cls);
    last = cls;
  }
  return shape;
}

uint32_t HashFeature(std::string_view feature, uint32_t feature_dim) {
  return static_cast<uint32_t>(Fnv1a64(feature) % feature_dim);
}

// Gradient accumulator with dense emission storage and a touched list so
// clearing costs O(touched).
struct DenseGradient {
  std::vector<double> transitions;
  std::vector<double> start;
  std::vector<double> end;
  std::vector<double> emission;
  std::vector<uint32_t> touched;
  std::vector<char> is_touched;

  explicit DenseGradient(const CrfModel& model)
      : transitions(model.transitions.size(), 0.0),
        start(model.num_labels(), 0.0),
        end(model.num_labels(), 0.0),
        emission(model.emission_weights.size(), 0.0),
        is_touched(model.feature_dim, 0) {}

  void Clear(size_t num_labels) {
    std::fill(transitions.begin(), transitions.end(), 0.0);
    std::fill(start.begin(), start.end(), 0.0);
    std::fill(end.begin(), end.end(), 0.0);
    for (uint32_t f : touched) {
      std::fill_n(emission.begin() + static_cast<size_t>(f) * num_labels,
                  num_labels, 0.0);
      is_touched[f] = 0;
    }
    touched.clear();
  }
};

void CheckExample(const CrfModel& model, const CrfExample& example,
                  bool constrain_iob2) {
  if (example.features.size() != example.gold.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(example.features.size()) + " positions but " +
                    std::to_string(example.gold.size()) + " gold labels");
  }
  if (example.gold.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty training example");
  }
  TagSequence tags;
  for (size_t label : example.gold) {
    if (label >= model.num_labels()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "gold label index " + std::to_string(label) +
                      " out of range");
    }
    tags.push_back(model.labels[label]);
  }
  for (const SparseFeatures& features : example.features) {
    for (uint32_t f : features) {
      if (f >= model.feature_dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "feature index " + std::to_string(f) + " >= feature_dim");
      }
    }
  }
  if (constrain_iob2) ValidateIob2(tags);
}

// Adds scale * d(nll)/d(theta) for one example (no L2) and returns its nll.
double AccumulateExample(const CrfModel& model, const CrfExample& example,
                         bool constrain_iob2, double scale,
                         DenseGradient* grad) {
  const size_t L = model.num_labels();
  const EmissionMatrix emissions = ComputeEmissions(model, example.features);
  const Marginals marginals = ForwardBackward(emissions, model, constrain_iob2);
  const size_t T = emissions.num_tokens();
  const double nll =
      marginals.log_partition - PathScore(emissions, model, example.gold);

  for (size_t l = 0; l < L; ++l) {
    grad->start[l] += scale * marginals.node[l];
    grad->end[l] += scale * marginals.node[(T - 1) * L + l];
  }
  grad->start[example.gold.front()] -= scale;
  grad->end[example.gold.back()] -= scale;
  for (size_t t = 0; t + 1 < T; ++t) {
    for (size_t k = 0; k < L * L; ++k) {
      grad->transitions[k] += scale * marginals.edge[t * L * L + k];
    }
    grad->transitions[example.gold[t] * L + example.gold[t + 1]] -= scale;
  }
  for (size_t t = 0; t < T; ++t) {
    for (uint32_t f : example.features[t]) {
      if (!grad->is_touched[f]) {
        grad->is_touched[f] = 1;
        grad->touched.push_back(f);
      }
      double* g = &grad->emission[static_cast<size_t>(f) * L];
      for (size_t l = 0; l < L; ++l) g[l] += scale * marginals.node[t * L + l];
      g[example.gold[t]] -= scale;
    }
  }
  return nll;
}

double SquaredNorm(const CrfModel& model) {
  double sum = 0.0;
  for (double v : model.transitions) sum += v * v;
  for (double v : model.start_scores) sum += v * v;
  for (double v : model.end_scores) sum += v * v;
  for (double v : model.emission_weights) sum += v * v;
  return sum;
}

}  // namespace

size_t CrfModel::LabelIndex(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label \"" + label + "\" not in model");
  }
  return static_cast<size_t>(it - labels.begin());
}

std::vector<std::string> Iob2Labels(std::vector<std::string> entity_types) {
  std::sort(entity_types.begin(), entity_types.end());
  entity_types.erase(std::unique(entity_types.begin(), entity_types.end()),
                     entity_types.end());
  std::vector<std::string> labels = {std::string(kOutsideLabel)};
  for (const std::string& type : entity_types) {
    labels.push_back("B-" + type);
    labels.push_back("I-" + type);
  }
  return labels;
}

static void ValidateLabels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  std::set<std::string> begin_types;
  for (const std::string& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate label " + label);
    }
    if (label == kOutsideLabel) continue;
    if (label.size() < 3 || (label[0] != 'B' && label[0] != 'I') ||
        label[1] != '-') {
      throw Error(ErrorCode::kInvalidArgument, "malformed label " + label);
    }
    if (label[0] == 'B') begin_types.insert(label.substr(2));
  }
  if (seen.count(std::string(kOutsideLabel)) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "label set lacks O");
  }
  for (const std::string& label : labels) {
    if (label[0] == 'I' && begin_types.count(label.substr(2)) == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  label + " has no matching B- label");
    }
  }
}

CrfModel CreateCrfModel(std::vector<std::string> labels,
                        uint32_t feature_dim) {
  ValidateLabels(labels);
  if (feature_dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "feature_dim must be positive");
  }
  CrfModel model;
  const size_t L = labels.size();
  model.labels = std::move(labels);
  model.transitions.assign(L * L, 0.0);
  model.start_scores.assign(L, 0.0);
  model.end_scores.assign(L, 0.0);
  model.feature_dim = feature_dim;
  model.emission_weights.assign(static_cast<size_t>(feature_dim) * L, 0.0);
  return model;
}

void ValidateCrfModel(const CrfModel& model) {
  ValidateLabels(model.labels);
  const size_t L = model.num_labels();
  if (model.transitions.size() != L * L || model.start_scores.size() != L ||
      model.end_scores.size() != L ||
      model.emission_weights.size() !=
          static_cast<size_t>(model.feature_dim) * L) {
    throw Error(ErrorCode::kInvalidArgument, "parameter sizes do not match");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
  };
  if (!finite(model.transitions) || !finite(model.start_scores) ||
      !finite(model.end_scores) || !finite(model.emission_weights)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite parameter");
  }
}

std::vector<SparseFeatures> FeaturizeSentence(const Sentence& sentence,
                                              uint32_t feature_dim) {
  const size_t T = sentence.tokens.size();
  std::vector<std::string> lower(T);
  for (size_t i = 0; i < T; ++i) lower[i] = NfcLower(sentence.tokens[i].text);

  std::vector<SparseFeatures> out(T);
  for (size_t i = 0; i < T; ++i) {
    SparseFeatures& f = out[i];
    f.push_back(HashFeature("bias", feature_dim));
    f.push_back(HashFeature("w=" + lower[i], feature_dim));
    f.push_back(HashFeature(
        "s=" + ShapeOf(DecodeUtf8(sentence.tokens[i].text)), feature_dim));
    const std::u32string padded = U"^" + DecodeUtf8(lower[i]) + U"$";
    for (size_t k = 0; k + 3 <= padded.size(); ++k) {
      f.push_back(HashFeature("3=" + EncodeUtf8(padded.substr(k, 3)),
                              feature_dim));
    }
    f.push_back(
        HashFeature("p=" + (i > 0 ? lower[i - 1] : "<s>"), feature_dim));
    f.push_back(
        HashFeature("n=" + (i + 1 < T ? lower[i + 1] : "</s>"), feature_dim));
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
  }
  return out;
}

SparseFeatures Featurize(const Sentence& sentence, size_t position,
                         uint32_t feature_dim) {
  if (position >= sentence.tokens.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "position " + std::to_string(position) + " out of range");
  }
  return FeaturizeSentence(sentence, feature_dim)[position];
}

EmissionMatrix ComputeEmissions(const CrfModel& model,
                                std::span<const SparseFeatures> features) {
  const size_t L = model.num_labels();
  EmissionMatrix emissions(features.size(), L);
  for (size_t t = 0; t < features.size(); ++t) {
    for (uint32_t f : features[t]) {
      if (f >= model.feature_dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "feature index " + std::to_string(f) + " >= feature_dim");
      }
      const double* w = &model.emission_weights[static_cast<size_t>(f) * L];
      for (size_t l = 0; l < L; ++l) emissions.at(t, l) += w[l];
    }
  }
  return emissions;
}

std::vector<bool> Iob2TransitionMask(const std::vector<std::string>& labels) {
  const size_t L = labels.size();
  std::vector<bool> allowed(L * L, true);
  for (size_t to = 0; to < L; ++to) {
    if (labels[to].rfind("I-", 0) != 0) continue;
    const std::string type = labels[to].substr(2);
    for (size_t from = 0; from < L; ++from) {
      allowed[from * L + to] =
          labels[from] == "B-" + type || labels[from] == "I-" + type;
    }
  }
  return allowed;
}

std::vector<bool> Iob2StartMask(const std::vector<std::string>& labels) {
  std::vector<bool> allowed(labels.size(), true);
  for (size_t l = 0; l < labels.size(); ++l) {
    allowed[l] = labels[l].rfind("I-", 0) != 0;
  }
  return allowed;
}

double LogForward(const EmissionMatrix& emissions, const CrfModel& model,
                  bool constrain_iob2) {
  CheckEmissions(emissions, model);
  const size_t L = model.num_labels();
  const EffectiveScores s = Effective(model, constrain_iob2);
  std::vector<double> alpha(L);
  std::vector<double> next(L);
  std::vector<double> terms(L);
  for (size_t l = 0; l < L; ++l) alpha[l] = s.start[l] + emissions.at(0, l);
  for (size_t t = 1; t < emissions.num_tokens(); ++t) {
    for (size_t b = 0; b < L; ++b) {
      for (size_t a = 0; a < L; ++a) {
        terms[a] = alpha[a] + s.transitions[a * L + b];
      }
      next[b] = LogSumExp(terms) + emissions.at(t, b);
    }
    alpha.swap(next);
  }
  for (size_t l = 0; l < L; ++l) terms[l] = alpha[l] + model.end_scores[l];
  return LogSumExp(terms);
}

double PathScore(const EmissionMatrix& emissions, const CrfModel& model,
                 std::span<const size_t> path) {
  CheckEmissions(emissions, model);
  if (path.size() != emissions.num_tokens()) {
    throw Error(ErrorCode::kDimensionMismatch, "path length mismatch");
  }
  double score = model.start_scores[path[0]] + model.end_scores[path.back()];
  for (size_t t = 0; t < path.size(); ++t) {
    score += emissions.at(t, path[t]);
    if (t > 0) score += model.transition(path[t - 1], path[t]);
  }
  return score;
}

ViterbiResult Viterbi(const EmissionMatrix& emissions, const CrfModel& model,
                      bool constrain_iob2) {
  CheckEmissions(emissions, model);
  const size_t L = model.num_labels();
  const size_t T = emissions.num_tokens();
  const EffectiveScores s = Effective(model, constrain_iob2);

  std::vector<double> delta(L);
  std::vector<double> next(L);
  std::vector<size_t> backpointer(T * L, 0);
  for (size_t l = 0; l < L; ++l) delta[l] = s.start[l] + emissions.at(0, l);
  for (size_t t = 1; t < T; ++t) {
    for (size_t b = 0; b < L; ++b) {
      double best = kNegInf;
      size_t arg = 0;
      for (size_t a = 0; a < L; ++a) {
        const double v = delta[a] + s.transitions[a * L + b];
        if (v > best) {
          best = v;
          arg = a;
        }
      }
      next[b] = best + emissions.at(t, b);
      backpointer[t * L + b] = arg;
    }
    delta.swap(next);
  }
  double best = kNegInf;
  size_t last = 0;
  for (size_t l = 0; l < L; ++l) {
    const double v = delta[l] + model.end_scores[l];
    if (v > best) {
      best = v;
      last = l;
    }
  }

  ViterbiResult result;
  result.score = best;
  result.path.assign(T, 0);
  result.path[T - 1] = last;
  for (size_t t = T - 1; t > 0; --t) {
    result.path[t - 1] = backpointer[t * L + result.path[t]];
  }
  for (size_t l : result.path) result.tags.push_back(model.labels[l]);
  return result;
}

Marginals ForwardBackward(const EmissionMatrix& emissions,
                          const CrfModel& model, bool constrain_iob2) {
  CheckEmissions(emissions, model);
  const size_t L = model.num_labels();
  const size_t T = emissions.num_tokens();
  const EffectiveScores s = Effective(model, constrain_iob2);

  std::vector<double> alpha(T * L);
  std::vector<double> beta(T * L);
  std::vector<double> terms(L);
  for (size_t l = 0; l < L; ++l) alpha[l] = s.start[l] + emissions.at(0, l);
  for (size_t t = 1; t < T; ++t) {
    for (size_t b = 0; b < L; ++b) {
      for (size_t a = 0; a < L; ++a) {
        terms[a] = alpha[(t - 1) * L + a] + s.transitions[a * L + b];
      }
      alpha[t * L + b] = LogSumExp(terms) + emissions.at(t, b);
    }
  }
  for (size_t l = 0; l < L; ++l) beta[(T - 1) * L + l] = model.end_scores[l];
  for (size_t t = T - 1; t > 0; --t) {
    for (size_t a = 0; a < L; ++a) {
      for (size_t b = 0; b < L; ++b) {
        terms[b] = s.transitions[a * L + b] + emissions.at(t, b) +
                   beta[t * L + b];
      }
      beta[(t - 1) * L + a] = LogSumExp(terms);
    }
  }
  for (size_t l = 0; l < L; ++l) {
    terms[l] = alpha[(T - 1) * L + l] + model.end_scores[l];
  }

  Marginals m;
  m.log_partition = LogSumExp(terms);
  m.node.resize(T * L);
  for (size_t i = 0; i < T * L; ++i) {
    m.node[i] = std::exp(alpha[i] + beta[i] - m.log_partition);
  }
  m.edge.resize(T > 0 ? (T - 1) * L * L : 0);
  for (size_t t = 0; t + 1 < T; ++t) {
    for (size_t a = 0; a < L; ++a) {
      for (size_t b = 0; b < L; ++b) {
        m.edge[(t * L + a) * L + b] =
            std::exp(alpha[t * L + a] + s.transitions[a * L + b] +
                     emissions.at(t + 1, b) + beta[(t + 1) * L + b] -
                     m.log_partition);
      }
    }
  }
  return m;
}

CrfExample MakeExample(const CrfModel& model, const TaggedSentence& sentence) {
  CrfExample example;
  example.features = FeaturizeSentence(sentence.sentence, model.feature_dim);
  const TagSequence tags = EncodeIob2(sentence.sentence, sentence.mentions);
  example.gold.reserve(tags.size());
  for (const std::string& tag : tags) {
    example.gold.push_back(model.LabelIndex(tag));
  }
  return example;
}

NllResult NllAndGradient(const CrfModel& model,
                         std::span<const CrfExample> examples, double l2,
                         bool constrain_iob2) {
  const size_t L = model.num_labels();
  DenseGradient dense(model);
  NllResult result;
  for (const CrfExample& example : examples) {
    CheckExample(model, example, constrain_iob2);
    result.nll += AccumulateExample(model, example, constrain_iob2, 1.0, &dense);
  }
  result.nll += 0.5 * l2 * SquaredNorm(model);

  CrfGradient& g = result.gradient;
  g.transitions = std::move(dense.transitions);
  g.start_scores = std::move(dense.start);
  g.end_scores = std::move(dense.end);
  for (size_t i = 0; i < g.transitions.size(); ++i) {
    g.transitions[i] += l2 * model.transitions[i];
  }
  for (size_t l = 0; l < L; ++l) {
    g.start_scores[l] += l2 * model.start_scores[l];
    g.end_scores[l] += l2 * model.end_scores[l];
  }
  for (uint32_t f : dense.touched) {
    g.emission_weights[f].assign(
        dense.emission.begin() + static_cast<size_t>(f) * L,
        dense.emission.begin() + static_cast<size_t>(f + 1) * L);
  }
  if (l2 != 0.0) {
    for (uint32_t f = 0; f < model.feature_dim; ++f) {
      const double* w = &model.emission_weights[static_cast<size_t>(f) * L];
      if (std::all_of(w, w + L, [](double x) { return x == 0.0; })) continue;
      std::vector<double>& row = g.emission_weights[f];
      row.resize(L, 0.0);
      for (size_t l = 0; l < L; ++l) row[l] += l2 * w[l];
    }
  }
  return result;
}

void TrainCrfExamples(CrfModel* model, std::span<const CrfExample> examples,
                      const TrainConfig& cfg, TrainHistory* history) {
  if (examples.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no training examples");
  }
  if (!(cfg.learning_rate > 0.0) || cfg.l2_penalty < 0.0 ||
      cfg.batch_size == 0 || cfg.epochs < 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid training configuration");
  }
  for (const CrfExample& example : examples) {
    CheckExample(*model, example, /*constrain_iob2=*/true);
  }

  const size_t L = model->num_labels();
  const double lr = cfg.learning_rate;
  DenseGradient grad(*model);
  std::vector<size_t> order(examples.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(DeriveSeed(cfg.seed, static_cast<uint64_t>(epoch)));
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.Uniform(i)]);
    }

    for (size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const size_t end = std::min(order.size(), begin + cfg.batch_size);
      const double scale = 1.0 / static_cast<double>(end - begin);
      grad.Clear(L);
      for (size_t i = begin; i < end; ++i) {
        AccumulateExample(*model, examples[order[i]], cfg.constrain_iob2,
                          scale, &grad);
      }
      const double decay = 1.0 - lr * cfg.l2_penalty;
      for (size_t k = 0; k < model->transitions.size(); ++k) {
        model->transitions[k] =
            decay * model->transitions[k] - lr * grad.transitions[k];
      }
      for (size_t l = 0; l < L; ++l) {
        model->start_scores[l] =
            decay * model->start_scores[l] - lr * grad.start[l];
        model->end_scores[l] = decay * model->end_scores[l] - lr * grad.end[l];
      }
      if (cfg.l2_penalty != 0.0) {
        for (double& w : model->emission_weights) w *= decay;
      }
      for (uint32_t f : grad.touched) {
        double* w = &model->emission_weights[static_cast<size_t>(f) * L];
        const double* g = &grad.emission[static_cast<size_t>(f) * L];
        for (size_t l = 0; l < L; ++l) w[l] -= lr * g[l];
      }
    }

    if (history != nullptr) {
      double total = 0.0;
      for (const CrfExample& example : examples) {
        const EmissionMatrix emissions =
            ComputeEmissions(*model, example.features);
        total += LogForward(emissions, *model, cfg.constrain_iob2) -
                 PathScore(emissions, *model, example.gold);
      }
      history->epoch_objective.push_back(
          total / static_cast<double>(examples.size()) +
          0.5 * cfg.l2_penalty * SquaredNorm(*model));
    }
  }
}

CrfModel TrainCrf(std::span<const TaggedSentence> data, const TrainConfig& cfg,
                  TrainHistory* history) {
  if (data.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no training sentences");
  }
  std::vector<std::string> types;
  for (const TaggedSentence& ts : data) {
    for (const Mention& m : ts.mentions) types.push_back(m.entity_type);
  }
  CrfModel model = CreateCrfModel(Iob2Labels(types), cfg.feature_dim);
  std::vector<CrfExample> examples;
  examples.reserve(data.size());
  for (const TaggedSentence& ts : data) {
    if (ts.sentence.tokens.empty()) continue;
    examples.push_back(MakeExample(model, ts));
  }
  if (examples.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "all training sentences are empty");
  }
  TrainCrfExamples(&model, examples, cfg, history);
  return model;
}

std::vector<Mention> TagWithEmissions(const CrfModel& model,
                                      const Sentence& sentence,
                                      const EmissionMatrix& emissions,
                                      bool constrain_iob2) {
  if (sentence.tokens.empty()) return {};
  if (emissions.num_tokens() != sentence.tokens.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "emissions cover " + std::to_string(emissions.num_tokens()) +
                    " tokens, sentence has " +
                    std::to_string(sentence.tokens.size()));
  }
  const ViterbiResult best = Viterbi(emissions, model, constrain_iob2);
  return DecodeIob2(best.tags, sentence, DecodeMode::kTolerant);
}

std::vector<Mention> TagSentences(const CrfModel& model,
                                  std::span<const Sentence> sentences,
                                  bool constrain_iob2) {
  std::vector<Mention> mentions;
  for (const Sentence& sentence : sentences) {
    if (sentence.tokens.empty()) continue;
    const EmissionMatrix emissions = ComputeEmissions(
        model, FeaturizeSentence(sentence, model.feature_dim));
    for (Mention& m :
         TagWithEmissions(model, sentence, emissions, constrain_iob2)) {
      mentions.push_back(std::move(m));
    }
  }
  return mentions;
}

}  // namespace sympel
