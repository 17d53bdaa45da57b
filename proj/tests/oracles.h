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

// Reference implementations used only by tests: exhaustive CRF enumeration,
// finite differences, and a sampler for synthetic tagging data.

#ifndef SYMPEL_TESTS_ORACLES_H_
#define SYMPEL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "sympel/corpus_io.h"
#include "sympel/crf.h"

namespace sympel::testing {

// IOB2 validity of a label bigram, decided from the label strings alone.
inline bool AllowedStart(const std::string& label) {
  return label.rfind("I-", 0) != 0;
}
inline bool AllowedTransition(const std::string& from, const std::string& to) {
  if (to.rfind("I-", 0) != 0) return true;
  if (from == "O") return false;
  return from.substr(2) == to.substr(2);
}

inline double BruteScore(const EmissionMatrix& em, const CrfModel& model,
                         const std::vector<size_t>& path) {
  const size_t L = model.labels.size();
  double s = model.start_scores[path[0]] + model.end_scores[path.back()];
  for (size_t t = 0; t < path.size(); ++t) {
    s += em.at(t, path[t]);
    if (t > 0) s += model.transitions[path[t - 1] * L + path[t]];
  }
  return s;
}

inline bool BruteValid(const CrfModel& model, const std::vector<size_t>& path) {
  if (!AllowedStart(model.labels[path[0]])) return false;
  for (size_t t = 1; t < path.size(); ++t) {
    if (!AllowedTransition(model.labels[path[t - 1]], model.labels[path[t]])) {
      return false;
    }
  }
  return true;
}

struct BruteResult {
  std::vector<size_t> best_path;
  double best_score = -std::numeric_limits<double>::infinity();
  double log_partition = -std::numeric_limits<double>::infinity();
  size_t paths = 0;
};

// Enumerates all L^T label paths (or only IOB2-valid ones).
inline BruteResult BruteForce(const EmissionMatrix& em, const CrfModel& model,
                              bool constrain) {
  const size_t L = model.labels.size();
  const size_t T = em.num_tokens();
  size_t total = 1;
  for (size_t t = 0; t < T; ++t) total *= L;
  std::vector<size_t> path(T, 0);
  std::vector<double> scores;
  BruteResult r;
  for (size_t index = 0; index < total; ++index) {
    size_t rest = index;
    for (size_t t = T; t > 0; --t) {
      path[t - 1] = rest % L;
      rest /= L;
    }
    if (constrain && !BruteValid(model, path)) continue;
    const double s = BruteScore(em, model, path);
    scores.push_back(s);
    if (s > r.best_score) {
      r.best_score = s;
      r.best_path = path;
    }
  }
  r.paths = scores.size();
  double mx = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double s : scores) sum += std::exp(s - mx);
  r.log_partition = mx + std::log(sum);
  return r;
}

// Model with small dense random parameters and random emission weights.
inline CrfModel RandomModel(std::mt19937_64& gen, std::vector<std::string> labels,
                            uint32_t feature_dim, double scale = 1.0) {
  CrfModel m = CreateCrfModel(std::move(labels), feature_dim);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (double& x : m.transitions) x = u(gen);
  for (double& x : m.start_scores) x = u(gen);
  for (double& x : m.end_scores) x = u(gen);
  for (double& x : m.emission_weights) x = u(gen);
  return m;
}

inline EmissionMatrix RandomEmissions(std::mt19937_64& gen, size_t T, size_t L,
                                      double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  EmissionMatrix em(T, L);
  for (size_t t = 0; t < T; ++t) {
    for (size_t l = 0; l < L; ++l) em.at(t, l) = u(gen);
  }
  return em;
}

// Emissions computed from sparse features without the library's helper.
inline EmissionMatrix DirectEmissions(const CrfModel& m,
                                      const std::vector<SparseFeatures>& feats) {
  const size_t L = m.labels.size();
  EmissionMatrix em(feats.size(), L);
  for (size_t t = 0; t < feats.size(); ++t) {
    for (uint32_t f : feats[t]) {
      for (size_t l = 0; l < L; ++l) {
        em.at(t, l) += m.emission_weights[static_cast<size_t>(f) * L + l];
      }
    }
  }
  return em;
}

// Objective recomputed by path enumeration.
inline double BruteObjective(const CrfModel& m,
                             const std::vector<CrfExample>& examples, double l2,
                             bool constrain) {
  double total = 0.0;
  for (const CrfExample& ex : examples) {
    const EmissionMatrix em = DirectEmissions(m, ex.features);
    total += BruteForce(em, m, constrain).log_partition -
             BruteScore(em, m, ex.gold);
  }
  double sq = 0.0;
  for (double x : m.transitions) sq += x * x;
  for (double x : m.start_scores) sq += x * x;
  for (double x : m.end_scores) sq += x * x;
  for (double x : m.emission_weights) sq += x * x;
  return total + 0.5 * l2 * sq;
}

// Central difference of BruteObjective with respect to *param.
inline double FiniteDifference(CrfModel& m, double* param,
                               const std::vector<CrfExample>& examples,
                               double l2, bool constrain, double h = 1e-5) {
  const double saved = *param;
  *param = saved + h;
  const double plus = BruteObjective(m, examples, l2, constrain);
  *param = saved - h;
  const double minus = BruteObjective(m, examples, l2, constrain);
  *param = saved;
  return (plus - minus) / (2.0 * h);
}

// A fixed 4-label tagger over a toy vocabulary. Label paths are drawn by
// forward filtering / backward sampling from the transition-only chain, then
// each token is drawn from its label's word list.
class SyntheticCrf {
 public:
  SyntheticCrf() {
    labels_ = {"O", "B-SINTOMA", "I-SINTOMA", "B-NEGACION"};
    const double ninf = -std::numeric_limits<double>::infinity();
    // rows: from O, B-S, I-S, B-N
    trans_ = {1.2, 0.3, ninf, 0.1,    //
              0.2, -1.5, 1.0, -2.0,   //
              0.4, -1.0, -0.2, -2.0,  //
              0.8, 0.6, ninf, -3.0};
    start_ = {1.0, 0.5, ninf, 0.3};
    vocab_ = {
        {"el", "paciente", "presenta", "refiere", "con", "de", "desde", "hace",
         "dias", "la", "y", "en", "se", "observa", "tras", "una", "semana",
         "acude", "por", "al"},
        {"dolor", "fiebre", "tos", "disnea", "nauseas", "cefalea", "vomitos",
         "mareo", "astenia", "prurito"},
        {"toracico", "abdominal", "intenso", "persistente", "leve", "agudo",
         "nocturno", "seca", "cronica", "dolor"},
        {"niega", "sin", "descarta", "ausencia"},
    };
  }

  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<size_t> SamplePath(std::mt19937_64& gen, size_t T) const {
    const size_t L = labels_.size();
    // alpha[t][l] in log-space with zero emissions.
    std::vector<std::vector<double>> alpha(T, std::vector<double>(L));
    alpha[0] = start_;
    for (size_t t = 1; t < T; ++t) {
      for (size_t j = 0; j < L; ++j) {
        alpha[t][j] = LogSum(L, [&](size_t i) {
          return alpha[t - 1][i] + trans_[i * L + j];
        });
      }
    }
    std::vector<size_t> path(T);
    path[T - 1] = Draw(gen, L, [&](size_t l) { return alpha[T - 1][l]; });
    for (size_t t = T - 1; t > 0; --t) {
      const size_t next = path[t];
      path[t - 1] = Draw(gen, L, [&](size_t i) {
        return alpha[t - 1][i] + trans_[i * L + next];
      });
    }
    return path;
  }

  // A sentence of T tokens joined by single spaces, with its mentions.
  TaggedSentence Sample(std::mt19937_64& gen, size_t T,
                        const std::string& doc_id) const {
    const std::vector<size_t> path = SamplePath(gen, T);
    TaggedSentence ts;
    Sentence& s = ts.sentence;
    s.doc_id = doc_id;
    std::vector<std::pair<size_t, size_t>> offsets;
    for (size_t t = 0; t < T; ++t) {
      const auto& words = vocab_[path[t]];
      const std::string& w = words[gen() % words.size()];
      if (t > 0) s.text += ' ';
      offsets.emplace_back(s.text.size(), s.text.size() + w.size());
      s.text += w;
      s.tokens.push_back(Token{w, offsets.back().first, offsets.back().second});
    }
    s.end = s.text.size();
    for (size_t t = 0; t < T;) {
      const std::string& label = labels_[path[t]];
      if (label == "O") {
        ++t;
        continue;
      }
      const std::string type = label.substr(2);
      size_t u = t + 1;
      while (u < T && labels_[path[u]] == "I-" + type) ++u;
      Mention m;
      m.doc_id = doc_id;
      m.start = offsets[t].first;
      m.end = offsets[u - 1].second;
      m.text = s.text.substr(m.start, m.end - m.start);
      m.entity_type = type;
      ts.mentions.push_back(m);
      t = u;
    }
    return ts;
  }

 private:
  template <typename F>
  static double LogSum(size_t n, F f) {
    double mx = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) mx = std::max(mx, f(i));
    if (std::isinf(mx)) return mx;
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += std::exp(f(i) - mx);
    return mx + std::log(s);
  }

  template <typename F>
  static size_t Draw(std::mt19937_64& gen, size_t n, F logw) {
    const double z = LogSum(n, logw);
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    for (size_t i = 0; i < n; ++i) {
      u -= std::exp(logw(i) - z);
      if (u < 0.0) return i;
    }
    for (size_t i = n; i > 0; --i) {
      if (std::isfinite(logw(i - 1))) return i - 1;
    }
    return 0;
  }

  std::vector<std::string> labels_;
  std::vector<double> trans_;
  std::vector<double> start_;
  std::vector<std::vector<std::string>> vocab_;
};

}  // namespace sympel::testing

#endif  // SYMPEL_TESTS_ORACLES_H_
