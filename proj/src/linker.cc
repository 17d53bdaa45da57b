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

#include "sympel/linker.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sympel/error.h"
#include "sympel/textseg.h"

namespace sympel {
namespace {

double Norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

double Clamp(double c) { return std::min(1.0, std::max(-1.0, c)); }

void CheckAligned(const KnowledgeBase& kb, const EmbeddingStore& store) {
  if (store.size() != kb.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding store has " + std::to_string(store.size()) +
                    " rows for " + std::to_string(kb.size()) + " KB records");
  }
}

double Combine(const WindowWeights& w, double full, double first,
               double last) {
  return w.w_full * full + w.w_first * first + w.w_last * last;
}

std::vector<ScoredRecord> TopK(const std::vector<double>& scores, size_t k) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  k = std::min(k, order.size());
  auto better = [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), better);
  std::vector<ScoredRecord> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) out.push_back({order[i], scores[order[i]]});
  return out;
}

// Similarity scores of every record for one mention, one array per view.
struct ViewScores {
  std::vector<double> full;
  std::vector<double> first;
  std::vector<double> last;
};

ViewScores ScoreViews(const Mention& mention, const EmbeddingStore& store,
                      Embedder& embedder, double fraction, bool windows) {
  const MentionViews views = WindowViews(mention.text, fraction);
  std::vector<std::string> texts = {views.full};
  if (windows) {
    texts.push_back(views.first);
    texts.push_back(views.last);
  }
  std::vector<std::vector<double>> vectors;
  try {
    vectors = embedder.Embed(texts);
  } catch (const Error& e) {
    throw Error(ErrorCode::kEmbedderError,
                "embedding mention \"" + mention.text + "\" (" +
                    mention.doc_id + "): " + e.what());
  }
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::kEmbedderError,
                "embedder returned the wrong number of vectors for \"" +
                    mention.text + "\"");
  }
  ViewScores scores;
  scores.full = CosineScan(vectors[0], store);
  if (windows) {
    scores.first = CosineScan(vectors[1], store);
    scores.last = CosineScan(vectors[2], store);
  }
  return scores;
}

}  // namespace

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of vectors with dims " + std::to_string(a.size()) +
                    " and " + std::to_string(b.size()));
  }
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  }
  double dot = 0.0;
  for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return Clamp(dot / (na * nb));
}

std::vector<double> CosineScan(std::span<const double> query,
                               const EmbeddingStore& store) {
  if (query.size() != store.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "query dim " + std::to_string(query.size()) + ", store dim " +
                    std::to_string(store.dim()));
  }
  const double qn = Norm(query);
  if (qn == 0.0) throw Error(ErrorCode::kZeroVector, "zero query vector");
  std::vector<double> scores(store.size());
  for (size_t i = 0; i < store.size(); ++i) {
    const std::span<const float> row = store.row(i);
    double dot = 0.0;
    for (size_t d = 0; d < row.size(); ++d) dot += query[d] * row[d];
    scores[i] = Clamp(dot / (qn * store.row_norm(i)));
  }
  return scores;
}

std::vector<ScoredRecord> Nearest(std::span<const double> query,
                                  const EmbeddingStore& store, size_t k) {
  if (store.size() == 0) {
    throw Error(ErrorCode::kEmptyStore, "nearest-neighbour search on empty store");
  }
  return TopK(CosineScan(query, store), k);
}

WindowWeights WindowWeights::Normalized(double full, double first, double last,
                                        double window_fraction) {
  const double sum = full + first + last;
  if (!(sum > 0.0) || full < 0.0 || first < 0.0 || last < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "window weights must be non-negative with a positive sum");
  }
  return WindowWeights{full / sum, first / sum, last / sum, window_fraction};
}

void WindowWeights::Validate() const {
  if (w_full < 0.0 || w_first < 0.0 || w_last < 0.0 ||
      std::abs(w_full + w_first + w_last - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "window weights must be non-negative and sum to 1");
  }
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "window fraction must lie in (0, 1]");
  }
}

MentionViews WindowViews(std::span<const std::string> tokens,
                         double fraction) {
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyMention, "mention has no tokens");
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "window fraction must lie in (0, 1]");
  }
  const size_t n = tokens.size();
  // The epsilon keeps exact products such as 0.75 * 4 from rounding up.
  const size_t window = std::min(
      n, std::max<size_t>(
             1, static_cast<size_t>(std::ceil(fraction * n - 1e-9))));
  auto join = [&](size_t begin, size_t end) {
    std::string out;
    for (size_t i = begin; i < end; ++i) {
      if (i > begin) out.push_back(' ');
      out += tokens[i];
    }
    return out;
  };
  return MentionViews{join(0, n), join(0, window), join(n - window, n)};
}

MentionViews WindowViews(const std::string& mention_text, double fraction) {
  std::vector<std::string> tokens;
  for (Token& t : Tokenize(mention_text)) tokens.push_back(std::move(t.text));
  return WindowViews(tokens, fraction);
}

double ScoreSliding(std::span<const double> full, std::span<const double> first,
                    std::span<const double> last,
                    std::span<const double> candidate,
                    const WindowWeights& weights) {
  return Combine(weights, Cosine(full, candidate), Cosine(first, candidate),
                 Cosine(last, candidate));
}

std::string_view LinkMethodName(LinkMethod method) {
  switch (method) {
    case LinkMethod::kExact: return "exact";
    case LinkMethod::kCosine: return "cosine";
    case LinkMethod::kCosineWindow: return "cosine_window";
    case LinkMethod::kAbstain: return "abstain";
  }
  return "unknown";
}

std::string ResolveAmbiguousCodes(const KnowledgeBase& kb,
                                  const std::vector<std::string>& codes) {
  if (codes.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no codes to choose from");
  }
  std::string best = codes.front();
  for (const std::string& code : codes) {
    const size_t count = kb.AliasCount(code);
    const size_t best_count = kb.AliasCount(best);
    if (count > best_count || (count == best_count && code < best)) {
      best = code;
    }
  }
  return best;
}

LinkPrediction Link(const Mention& mention, const KnowledgeBase& kb,
                    const EmbeddingStore& store, Embedder& embedder,
                    const LinkerConfig& cfg) {
  CheckAligned(kb, store);
  LinkPrediction prediction;
  prediction.mention = mention;

  const std::vector<std::string> codes = kb.ExactLookup(mention.text);
  if (!codes.empty()) {
    prediction.code = ResolveAmbiguousCodes(kb, codes);
    prediction.score = 1.0;
    prediction.method = LinkMethod::kExact;
    const std::optional<size_t> record =
        kb.Find(NormalizeSurface(mention.text), prediction.code);
    prediction.matched_alias = kb.records()[record.value()].surface;
    return prediction;
  }

  if (kb.empty()) {
    throw Error(ErrorCode::kEmptyStore, "knowledge base is empty");
  }
  if (cfg.use_sliding_window) cfg.weights.Validate();
  const ViewScores views =
      ScoreViews(mention, store, embedder, cfg.weights.window_fraction,
                 cfg.use_sliding_window);
  std::vector<double> scores = views.full;
  if (cfg.use_sliding_window) {
    for (size_t i = 0; i < scores.size(); ++i) {
      scores[i] =
          Combine(cfg.weights, views.full[i], views.first[i], views.last[i]);
    }
  }
  prediction.candidates = TopK(scores, std::max<size_t>(1, cfg.top_k));
  const ScoredRecord best = prediction.candidates.front();
  prediction.score = best.score;
  prediction.matched_alias = kb.records()[best.index].surface;
  prediction.code = kb.records()[best.index].code;
  prediction.method =
      cfg.use_sliding_window ? LinkMethod::kCosineWindow : LinkMethod::kCosine;
  if (cfg.abstain_threshold.has_value() && best.score < *cfg.abstain_threshold) {
    prediction.code = std::string(kNoCode);
    prediction.method = LinkMethod::kAbstain;
  }
  return prediction;
}

std::vector<LinkPrediction> LinkAll(std::span<const Mention> mentions,
                                    const KnowledgeBase& kb,
                                    const EmbeddingStore& store,
                                    Embedder& embedder,
                                    const LinkerConfig& cfg) {
  std::vector<LinkPrediction> out;
  out.reserve(mentions.size());
  for (const Mention& m : mentions) {
    out.push_back(Link(m, kb, store, embedder, cfg));
  }
  return out;
}

GridSearchResult GridSearchWeights(
    std::span<const std::pair<Mention, std::string>> validation,
    const KnowledgeBase& kb, const EmbeddingStore& store, Embedder& embedder,
    double step, double window_fraction) {
  if (validation.empty()) {
    throw Error(ErrorCode::kEmptyValidation, "grid search needs validation data");
  }
  const double parts = std::round(1.0 / step);
  if (!(step > 0.0) || parts < 1.0 || std::abs(parts * step - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid step must divide 1, got " + std::to_string(step));
  }
  CheckAligned(kb, store);
  const int n = static_cast<int>(parts);

  // Per mention: either a fixed exact-match verdict, or the records that can
  // win for some weighting. A record whose best view score is below another
  // record's worst view score loses under every convex weighting.
  struct Candidate {
    size_t index;
    double full, first, last;
  };
  struct Cached {
    bool exact_correct = false;
    bool exact = false;
    std::vector<Candidate> candidates;
    const std::string* gold = nullptr;
  };
  std::vector<Cached> cache;
  cache.reserve(validation.size());
  for (const auto& [mention, gold] : validation) {
    Cached c;
    c.gold = &gold;
    const std::vector<std::string> codes = kb.ExactLookup(mention.text);
    if (!codes.empty()) {
      c.exact = true;
      c.exact_correct = ResolveAmbiguousCodes(kb, codes) == gold;
    } else {
      const ViewScores views =
          ScoreViews(mention, store, embedder, window_fraction, true);
      double floor = -2.0;
      for (size_t i = 0; i < views.full.size(); ++i) {
        floor = std::max(
            floor, std::min({views.full[i], views.first[i], views.last[i]}));
      }
      for (size_t i = 0; i < views.full.size(); ++i) {
        if (std::max({views.full[i], views.first[i], views.last[i]}) >=
            floor - 1e-12) {
          c.candidates.push_back(
              {i, views.full[i], views.first[i], views.last[i]});
        }
      }
    }
    cache.push_back(std::move(c));
  }

  GridSearchResult result;
  result.accuracy = -1.0;
  for (int i = n; i >= 0; --i) {
    for (int j = n - i; j >= 0; --j) {
      const int k = n - i - j;
      const WindowWeights w{static_cast<double>(i) / n,
                            static_cast<double>(j) / n,
                            static_cast<double>(k) / n, window_fraction};
      size_t correct = 0;
      for (const Cached& c : cache) {
        if (c.exact) {
          correct += c.exact_correct;
          continue;
        }
        const Candidate* best = nullptr;
        double best_score = 0.0;
        for (const Candidate& cand : c.candidates) {
          const double s = Combine(w, cand.full, cand.first, cand.last);
          if (best == nullptr || s > best_score) {
            best = &cand;
            best_score = s;
          }
        }
        correct += kb.records()[best->index].code == *c.gold;
      }
      const double accuracy =
          static_cast<double>(correct) / static_cast<double>(cache.size());
      result.evaluated.push_back({w, accuracy});
      if (i == n) result.baseline_accuracy = accuracy;
      if (accuracy > result.accuracy) {
        result.accuracy = accuracy;
        result.best = w;
      }
    }
  }
  return result;
}

}  // namespace sympel
