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

#include "sympel/kb.h"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "sympel/error.h"
#include "sympel/text.h"

namespace sympel {
namespace {

size_t Levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<AliasRecord> RandomAliases(std::mt19937_64& gen, size_t n) {
  static const std::vector<std::string> words = {
      "dolor", "Dolor", "torácico", "TORÁCICO", "fiebre", "tos", "seca",
      "disnea", "  leve", "náuseas ", "cefalea", "intensa", "aguda"};
  std::vector<AliasRecord> out;
  for (size_t i = 0; i < n; ++i) {
    std::string surface;
    const size_t k = 1 + gen() % 3;
    for (size_t w = 0; w < k; ++w) {
      surface += words[gen() % words.size()];
      surface += gen() % 4 == 0 ? "  " : " ";
    }
    std::string code = std::to_string(100 + gen() % 30);
    if (gen() % 25 == 0) code += "+200";
    out.push_back(AliasRecord{surface, code, AliasSource::kGazetteer});
  }
  return out;
}

std::string Dump(const KnowledgeBase& kb) {
  std::ostringstream out;
  WriteKbDump(out, kb);
  return out.str();
}

TEST(Normalize, Rules) {
  EXPECT_EQ(NormalizeSurface("  Dolor   TORÁCICO\t"), "dolor torácico");
  EXPECT_EQ(NormalizeSurface("Torácico"), "torácico");
  EXPECT_EQ(NormalizeSurface(" \n "), "");
}

TEST(Build, DedupFirstSeenWins) {
  const std::vector<AliasRecord> records = {
      {"Dolor torácico", "1", AliasSource::kGazetteer},
      {"dolor  torácico", "1", AliasSource::kTrain},
      {"dolor torácico", "2", AliasSource::kTrain},
      {"tos", "3+4", AliasSource::kTrain},
      {"   ", "5", AliasSource::kTrain},
  };
  BuildStats stats;
  const KnowledgeBase kb = BuildFromRecords(records, &stats);
  ASSERT_EQ(kb.size(), 2u);
  EXPECT_EQ(kb.records()[0].surface, "Dolor torácico");
  EXPECT_EQ(kb.records()[0].source, AliasSource::kGazetteer);
  EXPECT_EQ(stats.duplicates, 1u);
  EXPECT_EQ(stats.composite_skipped, 1u);
  EXPECT_EQ(stats.empty_skipped, 1u);
  EXPECT_EQ(stats.input_aliases[AliasSource::kTrain], 4u);
  EXPECT_EQ(kb.ExactLookup("DOLOR TORÁCICO"),
            (std::vector<std::string>{"1", "2"}));
  EXPECT_TRUE(kb.ExactLookup("fiebre").empty());
  EXPECT_EQ(kb.AliasCount("1"), 1u);
  EXPECT_EQ(kb.AliasCount("zzz"), 0u);
}

TEST(Build, SourcesOverrideRecordSource) {
  AliasSourceInput gaz{"gaz", AliasSource::kGazetteer,
                       {{"fiebre", "1", AliasSource::kTrain}}};
  AliasSourceInput umls{"umls", AliasSource::kUmls,
                        {{"fiebre", "1", AliasSource::kTrain},
                         {"pirexia", "1", AliasSource::kTrain}}};
  const std::vector<AliasSourceInput> inputs = {gaz, umls};
  const KnowledgeBase kb = BuildKnowledgeBase(inputs);
  ASSERT_EQ(kb.size(), 2u);
  EXPECT_EQ(kb.records()[0].source, AliasSource::kGazetteer);
  EXPECT_EQ(kb.records()[1].source, AliasSource::kUmls);
}

// Dedup idempotence and index consistency on random inputs.
TEST(Build, RandomInvariants) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto records = RandomAliases(gen, gen() % 60);
    const KnowledgeBase kb = BuildFromRecords(records);
    const KnowledgeBase again = BuildFromRecords(kb.records());
    EXPECT_EQ(Dump(again), Dump(kb));

    std::set<std::pair<std::string, std::string>> keys;
    std::map<std::string, size_t> counts;
    for (size_t i = 0; i < kb.size(); ++i) {
      const AliasRecord& r = kb.records()[i];
      EXPECT_EQ(kb.normalized()[i], NormalizeSurface(r.surface));
      EXPECT_FALSE(IsCompositeCode(r.code));
      EXPECT_TRUE(keys.emplace(kb.normalized()[i], r.code).second);
      EXPECT_EQ(kb.Find(kb.normalized()[i], r.code), i);
      ++counts[r.code];
      const auto codes = kb.ExactLookup(r.surface);
      EXPECT_TRUE(std::binary_search(codes.begin(), codes.end(), r.code));
      if (i > 0) {
        EXPECT_LE(std::tie(kb.normalized()[i - 1], kb.records()[i - 1].code),
                  std::tie(kb.normalized()[i], r.code));
      }
    }
    EXPECT_EQ(counts, kb.code_alias_count());
    size_t indexed = 0;
    for (const auto& [surface, codes] : kb.exact_index()) {
      EXPECT_TRUE(std::is_sorted(codes.begin(), codes.end()));
      for (const std::string& code : codes) {
        EXPECT_TRUE(kb.Find(surface, code).has_value());
      }
      indexed += codes.size();
    }
    EXPECT_EQ(indexed, kb.size());
    // Every input (non-composite, non-empty) key is represented.
    for (const AliasRecord& r : records) {
      const std::string n = NormalizeSurface(r.surface);
      if (IsCompositeCode(r.code) || n.empty()) continue;
      EXPECT_TRUE(kb.Find(n, r.code).has_value());
    }
  }
}

TEST(Gazetteer, ReadsWithOptionalHeader) {
  std::istringstream with_header(
      "code\tterm\tsemantic_tag\n"
      "29857009\tdolor torácico\tfinding\n"
      "386661006\tfiebre\n");
  const auto records = ReadGazetteer(with_header, "g.tsv");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].code, "29857009");
  EXPECT_EQ(records[1].surface, "fiebre");
  std::istringstream bad("123\n");
  EXPECT_THROW(ReadGazetteer(bad, "bad.tsv"), Error);
}

TEST(Aliases, FromMentions) {
  const std::vector<Mention> mentions = {
      {"d", 0, 5, "dolor", "SINTOMA", "1"},
      {"d", 6, 9, "tos", "SINTOMA", std::nullopt},
      {"d", 10, 15, "mareo", "SINTOMA", "1+2"},
  };
  size_t composite = 0;
  const auto aliases = AliasesFromMentions(mentions, &composite);
  ASSERT_EQ(aliases.size(), 2u);
  EXPECT_EQ(aliases[1].code, std::string(kNoCode));
  EXPECT_EQ(aliases[0].source, AliasSource::kTrain);
  EXPECT_EQ(composite, 1u);
}

TEST(Dump, RoundTripWithEscapes) {
  const std::vector<AliasRecord> records = {
      {"dolor\\torácico", "1", AliasSource::kGazetteer},
      {"fiebre", "2", AliasSource::kUmls},
      {"tos", "3", AliasSource::kAugmentation},
  };
  const KnowledgeBase kb = BuildFromRecords(records);
  const std::string dump = Dump(kb);
  EXPECT_EQ(dump.substr(0, dump.find('\n')),
            "surface\tcode\tsource\tnormalized_surface");
  std::istringstream in(dump);
  EXPECT_EQ(Dump(ReadKbDump(in, "kb.tsv")), dump);
  std::istringstream tampered(dump + "zzz\t9\tgazetteer\twrong\n");
  EXPECT_THROW(ReadKbDump(tampered, "kb.tsv"), Error);
  EXPECT_EQ(ParseAliasSource(AliasSourceName(AliasSource::kUmls)),
            AliasSource::kUmls);
  EXPECT_THROW(ParseAliasSource("wiki"), Error);
}

TEST(AugmentRare, FivePerRareConceptAtEditDistanceOne) {
  std::mt19937_64 gen(5);
  const KnowledgeBase kb = BuildFromRecords(RandomAliases(gen, 80));
  std::vector<AliasRecord> with_no_code = kb.records();
  with_no_code.push_back({"sin código", std::string(kNoCode),
                          AliasSource::kTrain});
  const KnowledgeBase base = BuildFromRecords(with_no_code);

  KbAugmentConfig cfg;
  KbAugmentStats stats;
  const KnowledgeBase aug = AugmentRare(base, cfg, &stats);
  size_t rare = 0;
  for (const auto& [code, count] : base.code_alias_count()) {
    const size_t after = aug.AliasCount(code);
    if (code == kNoCode || count >= 5) {
      EXPECT_EQ(after, count) << code;
    } else {
      ++rare;
      EXPECT_EQ(after, count + 5) << code;
    }
  }
  EXPECT_EQ(stats.rare_codes, rare);
  EXPECT_EQ(stats.generated, 5 * rare);
  EXPECT_EQ(aug.size(), base.size() + 5 * rare);

  for (const AliasRecord& r : aug.records()) {
    if (r.source != AliasSource::kAugmentation) continue;
    bool close = false;
    for (const AliasRecord& o : base.records()) {
      if (o.code == r.code &&
          Levenshtein(DecodeUtf8(o.surface), DecodeUtf8(r.surface)) == 1) {
        close = true;
      }
    }
    EXPECT_TRUE(close) << r.surface;
  }
  // Identical seeds, identical dumps; a different seed changes them.
  EXPECT_EQ(Dump(AugmentRare(base, cfg)), Dump(aug));
  KbAugmentConfig other = cfg;
  other.seed = 99;
  EXPECT_NE(Dump(AugmentRare(base, other)), Dump(aug));
}

TEST(AugmentRare, DegenerateAliasFails) {
  const std::vector<AliasRecord> records = {{"1", "c", AliasSource::kGazetteer}};
  KbAugmentConfig cfg;
  EXPECT_THROW(AugmentRare(BuildFromRecords(records), cfg), Error);
  cfg.insert_char = false;
  cfg.delete_char = false;
  EXPECT_THROW(AugmentRare(BuildFromRecords(records), cfg), Error);
}

}  // namespace
}  // namespace sympel
