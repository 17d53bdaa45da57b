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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "sympel/embedding.h"
#include "sympel/error.h"
#include "sympel/kb.h"
#include "sympel/text.h"

namespace sympel {
namespace {

// Embedder with a fixed text -> vector table.
class TableEmbedder : public Embedder {
 public:
  explicit TableEmbedder(std::map<std::string, std::vector<double>> table)
      : table_(std::move(table)) {}
  std::string id() const override { return "table"; }
  std::vector<std::vector<double>> Embed(
      std::span<const std::string> texts) override {
    std::vector<std::vector<double>> out;
    for (const std::string& t : texts) out.push_back(table_.at(t));
    return out;
  }

 private:
  std::map<std::string, std::vector<double>> table_;
};

Mention Query(const std::string& text) {
  return Mention{"q", 0, CodepointCount(text), text, "SINTOMA", std::nullopt};
}

double OracleCosine(const std::vector<double>& q, std::span<const float> row) {
  double dot = 0.0, nq = 0.0, nr = 0.0;
  for (size_t d = 0; d < q.size(); ++d) {
    dot += q[d] * row[d];
    nq += q[d] * q[d];
    nr += static_cast<double>(row[d]) * row[d];
  }
  return dot / std::sqrt(nq * nr);
}

std::vector<AliasRecord> RandomKbRecords(std::mt19937_64& gen, size_t n) {
  static const std::vector<std::string> words = {
      "dolor", "torácico", "fiebre", "alta", "tos", "seca", "disnea",
      "cefalea", "intensa", "náuseas", "vómitos", "mareo", "dorsal",
      "lumbar", "abdominal", "crónico", "agudo", "leve", "prurito", "edema"};
  std::vector<AliasRecord> out;
  while (out.size() < n) {
    std::string s;
    const size_t k = 1 + gen() % 4;
    for (size_t w = 0; w < k; ++w) {
      if (w > 0) s += ' ';
      s += words[gen() % words.size()];
    }
    out.push_back({s, std::to_string(1000 + gen() % 300),
                   AliasSource::kGazetteer});
  }
  return out;
}

TEST(Cosine, BasicsAndErrors) {
  const std::vector<double> a = {1, 0}, b = {0, 2}, c = {3, 3};
  EXPECT_DOUBLE_EQ(Cosine(a, b), 0.0);
  EXPECT_NEAR(Cosine(a, c), std::sqrt(0.5), 1e-15);
  EXPECT_THROW(Cosine(a, std::vector<double>{1, 0, 0}), Error);
  EXPECT_THROW(Cosine(a, std::vector<double>{0, 0}), Error);
  EXPECT_THROW(Nearest(a, EmbeddingStore{}, 1), Error);
}

TEST(Nearest, TopKOrderAndTies) {
  const EmbeddingStore store(2, "x", {0.0f, 1.0f, 1.0f, 0.0f, 1.0f, 0.0f,
                                      0.6f, 0.8f});
  const std::vector<double> q = {1, 0};
  const auto top = Nearest(q, store, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].index, 1u);
  EXPECT_EQ(top[1].index, 2u);
  EXPECT_EQ(top[2].index, 3u);
  EXPECT_EQ(Nearest(q, store, 10).size(), 4u);
}

TEST(WindowViews, CeilingsAtThreeQuarters) {
  const size_t expected[] = {1, 2, 3, 3, 4, 5, 6, 6};
  std::vector<std::string> tokens;
  for (size_t n = 1; n <= 8; ++n) {
    tokens.push_back("t" + std::to_string(n));
    const MentionViews v = WindowViews(tokens, 0.75);
    const size_t w = expected[n - 1];
    std::string first, last, full;
    for (size_t i = 0; i < n; ++i) {
      full += (i ? " " : "") + tokens[i];
      if (i < w) first += (i ? " " : "") + tokens[i];
      if (i >= n - w) last += (i > n - w ? " " : "") + tokens[i];
    }
    EXPECT_EQ(v.full, full) << n;
    EXPECT_EQ(v.first, first) << n;
    EXPECT_EQ(v.last, last) << n;
  }
  EXPECT_THROW(WindowViews(std::vector<std::string>{}, 0.75), Error);
  EXPECT_THROW(WindowViews(tokens, 0.0), Error);
  EXPECT_EQ(WindowViews("dolor  torácico,", 0.75).full, "dolor torácico ,");
}

std::vector<double> AtCosine(double c) {
  return {c, std::sqrt(1.0 - c * c), 0.0};
}

TEST(ScoreSliding, HandComputedCombinations) {
  const std::vector<double> cand = {1.0, 0.0, 0.0};
  const WindowWeights w;
  EXPECT_NEAR(ScoreSliding(AtCosine(0.9), AtCosine(0.8), AtCosine(0.7), cand, w),
              0.867, 1e-12);
  EXPECT_NEAR(ScoreSliding(AtCosine(0.5), AtCosine(1.0), AtCosine(0.0), cand, w),
              0.75 * 0.5 + 0.17, 1e-12);
  const WindowWeights n = WindowWeights::Normalized(3, 1, 0);
  EXPECT_DOUBLE_EQ(n.w_full, 0.75);
  EXPECT_DOUBLE_EQ(n.w_first, 0.25);
  EXPECT_THROW(WindowWeights::Normalized(0, 0, 0), Error);
  EXPECT_THROW((WindowWeights{0.5, 0.5, 0.5, 0.75}).Validate(), Error);
  EXPECT_THROW((WindowWeights{1, 0, 0, 1.5}).Validate(), Error);
}

TEST(ResolveAmbiguousCodes, MajorityThenSmallest) {
  const std::vector<AliasRecord> records = {
      {"a", "200", AliasSource::kGazetteer},
      {"a", "100", AliasSource::kGazetteer},
      {"a", "300", AliasSource::kGazetteer},
      {"b", "300", AliasSource::kGazetteer},
  };
  const KnowledgeBase kb = BuildFromRecords(records);
  EXPECT_EQ(ResolveAmbiguousCodes(kb, {"100", "200", "300"}), "300");
  EXPECT_EQ(ResolveAmbiguousCodes(kb, {"200", "100"}), "100");
  StubEmbedder stub(16);
  const EmbeddingStore store = EmbedKnowledgeBase(kb, stub);
  const LinkPrediction p = Link(Query("A"), kb, store, stub, LinkerConfig{});
  EXPECT_EQ(p.code, "300");
  EXPECT_EQ(p.method, LinkMethod::kExact);
  EXPECT_EQ(p.score, 1.0);
  EXPECT_EQ(p.matched_alias, "a");
}

TEST(Link, MatchesFullScanOracle) {
  std::mt19937_64 gen(11);
  const KnowledgeBase kb = BuildFromRecords(RandomKbRecords(gen, 400));
  StubEmbedder stub(64);
  const EmbeddingStore store = EmbedKnowledgeBase(kb, stub);
  const auto queries = RandomKbRecords(gen, 60);
  size_t checked = 0;
  for (const AliasRecord& q : queries) {
    std::string text = q.surface + "s";
    if (!kb.ExactLookup(text).empty()) continue;
    const std::vector<std::string> views = {
        WindowViews(text, 0.75).full};
    const auto qv = stub.Embed(views)[0];
    size_t best = 0;
    double best_score = -2.0;
    for (size_t i = 0; i < store.size(); ++i) {
      const double s = OracleCosine(qv, store.row(i));
      if (s > best_score) {
        best_score = s;
        best = i;
      }
    }
    LinkerConfig cfg;
    cfg.top_k = 3;
    const LinkPrediction p = Link(Query(text), kb, store, stub, cfg);
    EXPECT_EQ(p.method, LinkMethod::kCosine);
    EXPECT_EQ(p.candidates.front().index, best);
    EXPECT_EQ(p.code, kb.records()[best].code);
    EXPECT_NEAR(p.score, best_score, 1e-12);
    EXPECT_EQ(p.candidates.size(), 3u);

    // Window path with weights (1, 0, 0) gives the same scores.
    LinkerConfig win = cfg;
    win.use_sliding_window = true;
    win.weights = WindowWeights{1.0, 0.0, 0.0, 0.75};
    const LinkPrediction w = Link(Query(text), kb, store, stub, win);
    EXPECT_EQ(w.candidates, p.candidates);
    EXPECT_EQ(w.method, LinkMethod::kCosineWindow);
    ++checked;
  }
  EXPECT_GT(checked, 40u);
}

TEST(Link, AbstainAndAlignmentErrors) {
  const std::vector<AliasRecord> records = {
      {"dolor torácico", "1", AliasSource::kGazetteer},
      {"fiebre", "2", AliasSource::kGazetteer}};
  const KnowledgeBase kb = BuildFromRecords(records);
  StubEmbedder stub(32);
  const EmbeddingStore store = EmbedKnowledgeBase(kb, stub);
  LinkerConfig cfg;
  cfg.abstain_threshold = 0.99;
  const LinkPrediction p = Link(Query("cefalea"), kb, store, stub, cfg);
  EXPECT_EQ(p.code, std::string(kNoCode));
  EXPECT_EQ(p.method, LinkMethod::kAbstain);
  EXPECT_EQ(LinkMethodName(p.method), "abstain");
  cfg.abstain_threshold.reset();
  EXPECT_EQ(Link(Query("dolor toracico"), kb, store, stub, cfg).code, "1");

  const EmbeddingStore short_store(32, "x",
                                   std::vector<float>(store.row(0).begin(),
                                                      store.row(0).end()));
  EXPECT_THROW(Link(Query("cefalea"), kb, short_store, stub, cfg), Error);
  StubEmbedder wrong_dim(16);
  try {
    Link(Query("cefalea"), kb, store, wrong_dim, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
  const std::vector<Mention> ms = {Query("fiebre"), Query("dolor toracico")};
  const auto all = LinkAll(ms, kb, store, stub, cfg);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].method, LinkMethod::kExact);
}

// Instance where only the first-window view points to the gold record.
struct FlipInstance {
  KnowledgeBase kb;
  EmbeddingStore store;
  std::unique_ptr<TableEmbedder> embedder;
  std::vector<std::pair<Mention, std::string>> validation;
};

FlipInstance MakeFlipInstance() {
  FlipInstance f;
  const std::vector<AliasRecord> records = {
      {"xa", "X", AliasSource::kGazetteer},
      {"yb", "Y", AliasSource::kGazetteer}};
  f.kb = BuildFromRecords(records);
  f.store = EmbeddingStore(3, "table", {1, 0, 0, 0, 1, 0});
  f.embedder = std::make_unique<TableEmbedder>(
      std::map<std::string, std::vector<double>>{
          {"m1 m2 m3 m4", {0.6, 0.8, 0.0}},
          {"m1 m2 m3", {1.0, 0.0, 0.0}},
          {"m2 m3 m4", {0.0, 1.0, 0.0}},
      });
  f.validation.emplace_back(Query("m1 m2 m3 m4"), "X");
  return f;
}

TEST(GridSearch, QuarterStepEvaluatesFifteenPoints) {
  FlipInstance f = MakeFlipInstance();
  const GridSearchResult r =
      GridSearchWeights(f.validation, f.kb, f.store, *f.embedder, 0.25);
  EXPECT_EQ(r.evaluated.size(), 15u);
  EXPECT_EQ(r.baseline_accuracy, 0.0);
  EXPECT_EQ(r.accuracy, 1.0);
  EXPECT_GT(r.best.w_first, 0.0);
  EXPECT_DOUBLE_EQ(r.best.w_full, 0.75);
  EXPECT_DOUBLE_EQ(r.best.w_first, 0.25);
  EXPECT_GE(r.accuracy, r.baseline_accuracy);
  for (const GridPoint& p : r.evaluated) {
    EXPECT_NEAR(p.weights.w_full + p.weights.w_first + p.weights.w_last, 1.0,
                1e-12);
  }
  EXPECT_THROW(GridSearchWeights({}, f.kb, f.store, *f.embedder, 0.25), Error);
  EXPECT_THROW(
      GridSearchWeights(f.validation, f.kb, f.store, *f.embedder, 0.3), Error);
}

// Every grid accuracy equals the one obtained by linking with those weights.
TEST(GridSearch, AgreesWithDirectLinking) {
  std::mt19937_64 gen(3);
  const KnowledgeBase kb = BuildFromRecords(RandomKbRecords(gen, 300));
  StubEmbedder stub(32);
  const EmbeddingStore store = EmbedKnowledgeBase(kb, stub);
  std::vector<std::pair<Mention, std::string>> validation;
  for (const AliasRecord& r : RandomKbRecords(gen, 25)) {
    validation.emplace_back(Query(r.surface + (gen() % 2 ? "s" : "")), r.code);
  }
  const GridSearchResult result =
      GridSearchWeights(validation, kb, store, stub, 0.1);
  EXPECT_EQ(result.evaluated.size(), 66u);
  double best = -1.0;
  for (const GridPoint& p : result.evaluated) {
    LinkerConfig cfg;
    cfg.use_sliding_window = true;
    cfg.weights = p.weights;
    size_t correct = 0;
    for (const auto& [m, gold] : validation) {
      correct += Link(m, kb, store, stub, cfg).code == gold;
    }
    EXPECT_DOUBLE_EQ(p.accuracy, static_cast<double>(correct) / 25.0);
    best = std::max(best, p.accuracy);
  }
  EXPECT_EQ(result.accuracy, best);
  EXPECT_GE(result.accuracy, result.baseline_accuracy);
}

}  // namespace
}  // namespace sympel
