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

#include "sympel/spans.h"

#include <gtest/gtest.h>

#include <random>

#include "sympel/error.h"
#include "sympel/text.h"

namespace sympel {
namespace {

Sentence MakeSentence(const std::string& text, size_t start = 0) {
  Sentence s;
  s.doc_id = "doc";
  s.start = start;
  s.text = text;
  s.end = start + CodepointCount(text);
  s.tokens = Tokenize(text, start);
  return s;
}

Mention M(size_t start, size_t end, const std::string& text,
          const std::string& type = "SINTOMA") {
  return Mention{"doc", start, end, text, type, std::nullopt};
}

TEST(EncodeIob2, Examples) {
  const Sentence s = MakeSentence("dolor torácico agudo");
  const std::vector<Mention> one = {M(0, 14, "dolor torácico")};
  EXPECT_EQ(EncodeIob2(s, one),
            (TagSequence{"B-SINTOMA", "I-SINTOMA", "O"}));
  EXPECT_EQ(EncodeIob2(s, std::vector<Mention>{}),
            (TagSequence{"O", "O", "O"}));
  const std::vector<Mention> adjacent = {M(0, 5, "dolor"),
                                         M(6, 14, "torácico")};
  EXPECT_EQ(EncodeIob2(s, adjacent),
            (TagSequence{"B-SINTOMA", "B-SINTOMA", "O"}));
}

TEST(EncodeIob2, MisalignmentPolicies) {
  const Sentence s = MakeSentence("dolor torácico agudo");
  const std::vector<Mention> partial = {M(2, 14, "lor torácico")};
  EXPECT_THROW(EncodeIob2(s, partial, AlignmentPolicy::kStrict), Error);
  std::vector<std::string> warnings;
  EXPECT_EQ(EncodeIob2(s, partial, AlignmentPolicy::kExpand, &warnings),
            (TagSequence{"B-SINTOMA", "I-SINTOMA", "O"}));
  EXPECT_EQ(warnings.size(), 1u);
  const std::vector<Mention> outside = {M(30, 35, "fuera")};
  EXPECT_THROW(EncodeIob2(s, outside), Error);
  const std::vector<Mention> overlap = {M(0, 14, "dolor torácico"),
                                        M(6, 20, "torácico agudo")};
  try {
    EncodeIob2(s, overlap);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverlappingMentions);
  }
}

TEST(DecodeIob2, Examples) {
  const Sentence s = MakeSentence("dolor torácico agudo", 10);
  const auto one = DecodeIob2({"B-SINTOMA", "I-SINTOMA", "O"}, s);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].text, "dolor torácico");
  EXPECT_EQ(one[0].start, 10u);
  EXPECT_EQ(one[0].end, 24u);
  EXPECT_TRUE(DecodeIob2({"O", "O", "O"}, s).empty());

  const Sentence two = MakeSentence("fiebre alta");
  const auto repaired = DecodeIob2({"I-SINTOMA", "O"}, two);
  ASSERT_EQ(repaired.size(), 1u);
  EXPECT_EQ(repaired[0].text, "fiebre");
  EXPECT_THROW(DecodeIob2({"I-SINTOMA", "O"}, two, DecodeMode::kStrict), Error);
  EXPECT_THROW(DecodeIob2({"O"}, two), Error);
  EXPECT_THROW(DecodeIob2({"B-A", "I-B"}, two, DecodeMode::kStrict), Error);
  EXPECT_EQ(DecodeIob2({"B-A", "I-B"}, two).size(), 2u);
}

TEST(Iob2Validity, Rules) {
  EXPECT_TRUE(IsValidIob2({"O", "B-A", "I-A", "B-B", "I-B", "O"}));
  EXPECT_FALSE(IsValidIob2({"I-A"}));
  EXPECT_FALSE(IsValidIob2({"O", "I-A"}));
  EXPECT_FALSE(IsValidIob2({"B-A", "I-B"}));
  EXPECT_FALSE(IsValidIob2({"X"}));
  EXPECT_THROW(ValidateIob2({"B-A", "I-B"}), Error);
}

TEST(Iob2RoundTrip, RandomConfigurations) {
  static const std::vector<std::string> words = {
      "dolor", "torácico", "fiebre", ",", "niño", "año", "(", "38,5", "ºC",
      "tos", "😀", "disnea", "."};
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 1 + gen() % 12;
    std::string text;
    for (size_t i = 0; i < n; ++i) {
      if (i > 0) text += ' ';
      text += words[gen() % words.size()];
    }
    const Sentence s = MakeSentence(text, gen() % 50);
    // Non-overlapping token runs with random types.
    std::vector<Mention> mentions;
    size_t t = 0;
    while (t < s.tokens.size()) {
      if (gen() % 3 == 0) {
        const size_t len = 1 + gen() % 3;
        const size_t last = std::min(s.tokens.size(), t + len) - 1;
        Mention m;
        m.doc_id = s.doc_id;
        m.start = s.tokens[t].start;
        m.end = s.tokens[last].end;
        m.text = Utf8Slice(s.text, m.start - s.start, m.end - s.start);
        m.entity_type = gen() % 2 ? "SINTOMA" : "NEGACION";
        mentions.push_back(m);
        t = last + 1;
      } else {
        ++t;
      }
    }
    const TagSequence tags =
        EncodeIob2(s, mentions, AlignmentPolicy::kStrict);
    EXPECT_TRUE(IsValidIob2(tags));
    EXPECT_EQ(DecodeIob2(tags, s, DecodeMode::kStrict), mentions)
        << "trial " << trial;
  }
}

TEST(Iob2RoundTrip, TolerantDecodeNeverFails) {
  static const std::vector<std::string> labels = {"O", "B-A", "I-A", "B-B",
                                                  "I-B", "I-C", "junk"};
  std::mt19937_64 gen(77);
  const Sentence s = MakeSentence("a b c d e f g h");
  for (int trial = 0; trial < 1000; ++trial) {
    TagSequence tags;
    for (size_t i = 0; i < s.tokens.size(); ++i) {
      tags.push_back(labels[gen() % labels.size()]);
    }
    std::vector<Mention> decoded;
    ASSERT_NO_THROW(decoded = DecodeIob2(tags, s));
    for (size_t i = 1; i < decoded.size(); ++i) {
      EXPECT_LE(decoded[i - 1].end, decoded[i].start);
    }
    // Re-encoding the repaired mentions gives a valid sequence.
    EXPECT_TRUE(IsValidIob2(EncodeIob2(s, decoded)));
  }
}

TEST(ResolveNesting, KeepsOutermost) {
  const std::vector<Mention> input = {M(6, 14, "torácico"),
                                      M(0, 14, "dolor torácico"),
                                      M(15, 20, "agudo")};
  const NestingResult r = ResolveNesting(input);
  EXPECT_EQ(r.kept, (std::vector<Mention>{M(0, 14, "dolor torácico"),
                                          M(15, 20, "agudo")}));
  EXPECT_EQ(r.dropped, (std::vector<Mention>{M(6, 14, "torácico")}));
}

TEST(ResolveNesting, PartialOverlapPrefersLongerThenEarlier) {
  const NestingResult longer = ResolveNesting(
      std::vector<Mention>{M(0, 5, "aaaaa"), M(3, 10, "aabbbbb")});
  EXPECT_EQ(longer.kept, (std::vector<Mention>{M(3, 10, "aabbbbb")}));
  const NestingResult tie = ResolveNesting(
      std::vector<Mention>{M(3, 8, "x"), M(0, 5, "y")});
  EXPECT_EQ(tie.kept, (std::vector<Mention>{M(0, 5, "y")}));
  Mention other = M(0, 5, "y");
  other.doc_id = "other";
  EXPECT_FALSE(Overlaps(other, M(0, 5, "y")));
}

TEST(Mention, CompositeCodes) {
  EXPECT_TRUE(IsCompositeCode("123+456"));
  EXPECT_FALSE(IsCompositeCode("123"));
  EXPECT_FALSE(IsCompositeCode(kNoCode));
}

}  // namespace
}  // namespace sympel
