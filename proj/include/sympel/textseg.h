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

#ifndef SYMPEL_TEXTSEG_H_
#define SYMPEL_TEXTSEG_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sympel {

struct Document {
  std::string doc_id;
  std::string text;  // UTF-8
};

// [start, end) are code point offsets into the owning document.
struct Token {
  std::string text;
  size_t start = 0;
  size_t end = 0;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string doc_id;
  size_t start = 0;
  size_t end = 0;
  std::string text;  // document slice [start, end)
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

struct SegmenterConfig {
  size_t max_tokens = 512;
  // Entries such as "Dr." that do not end a sentence.
  std::set<std::string> abbreviations;
};

// Splits on whitespace. Runs of word characters (letters, digits, combining
// marks) form one token; every other non-space character is its own token.
// Offsets are absolute: base_offset is added to every position.
std::vector<Token> Tokenize(std::string_view sentence_text,
                            size_t base_offset = 0);

// Rule-based sentence splitter. A break follows '.', '?' or '!' when the next
// non-space character is uppercase, a digit, or opening '¿'/'¡', unless the
// word ending at the period is a listed abbreviation. Sentences longer than
// cfg.max_tokens are chunked greedily at token boundaries.
// Throws Error(kInvalidArgument) when cfg.max_tokens < 2.
std::vector<Sentence> SplitSentences(const Document& doc,
                                     const SegmenterConfig& cfg);

struct CorpusStats {
  size_t documents = 0;
  size_t sentences = 0;
  size_t tokens = 0;
  size_t entities = 0;
  size_t unique_entity_surfaces = 0;
  size_t unique_codes = 0;
  size_t no_code_mentions = 0;
  size_t composite_mentions = 0;
  size_t nested_mentions = 0;
  // Documents whose whole-text token count exceeds cfg.max_tokens.
  size_t documents_over_budget = 0;
};

struct Mention;

CorpusStats ComputeCorpusStats(const std::vector<Document>& documents,
                               const std::vector<Mention>& annotations,
                               const SegmenterConfig& cfg);

std::string FormatCorpusStats(const CorpusStats& stats);

}  // namespace sympel

#endif  // SYMPEL_TEXTSEG_H_
