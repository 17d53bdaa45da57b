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

#include "sympel/textseg.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sympel/error.h"
#include "sympel/spans.h"
#include "sympel/text.h"

namespace sympel {
namespace {

bool IsTerminator(const Token& token) {
  return token.text == "." || token.text == "?" || token.text == "!";
}

bool OpensSentence(const Token& token) {
  const std::u32string first = DecodeUtf8(token.text);
  if (first.empty()) return false;
  const char32_t c = first.front();
  return IsUpper(c) || IsDigit(c) || c == U'¿' || c == U'¡';
}

// True when the period token at `index` closes a listed abbreviation. Both
// the last word ("Dr.") and the whole whitespace-free chunk ("p.ej.") are
// checked.
bool EndsAbbreviation(const std::vector<Token>& tokens, size_t index,
                      const std::set<std::string>& abbreviations) {
  if (abbreviations.empty() || tokens[index].text != "." || index == 0) {
    return false;
  }
  std::string chunk = ".";
  size_t i = index;
  bool first_word = true;
  while (i > 0 && tokens[i - 1].end == tokens[i].start) {
    --i;
    chunk.insert(0, tokens[i].text);
    if (first_word) {
      if (abbreviations.count(chunk) > 0) return true;
      first_word = false;
    }
  }
  return abbreviations.count(chunk) > 0;
}

void EmitChunked(const Document& doc, const std::vector<Token>& tokens,
                 size_t first, size_t last, size_t max_tokens,
                 std::vector<Sentence>* out) {
  for (size_t begin = first; begin < last; begin += max_tokens) {
    const size_t end = std::min(last, begin + max_tokens);
    Sentence sentence;
    sentence.doc_id = doc.doc_id;
    sentence.start = tokens[begin].start;
    sentence.end = tokens[end - 1].end;
    sentence.text = Utf8Slice(doc.text, sentence.start, sentence.end);
    sentence.tokens.assign(tokens.begin() + begin, tokens.begin() + end);
    out->push_back(std::move(sentence));
  }
}

}  // namespace

std::vector<Token> Tokenize(std::string_view sentence_text,
                            size_t base_offset) {
  const std::u32string text = DecodeUtf8(sentence_text);
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    if (IsSpace(text[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    if (IsWordChar(text[i])) {
      while (j < text.size() && IsWordChar(text[j])) ++j;
    }
    tokens.push_back(Token{EncodeUtf8(std::u32string_view(text).substr(i, j - i)),
                           base_offset + i, base_offset + j});
    i = j;
  }
  return tokens;
}

std::vector<Sentence> SplitSentences(const Document& doc,
                                     const SegmenterConfig& cfg) {
  if (cfg.max_tokens < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_tokens must be at least 2, got " +
                    std::to_string(cfg.max_tokens));
  }
  const std::vector<Token> tokens = Tokenize(doc.text, 0);
  std::vector<Sentence> sentences;
  size_t first = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const bool last_token = i + 1 == tokens.size();
    bool split = last_token;
    if (!last_token && IsTerminator(tokens[i]) &&
        tokens[i + 1].start > tokens[i].end && OpensSentence(tokens[i + 1]) &&
        !EndsAbbreviation(tokens, i, cfg.abbreviations)) {
      split = true;
    }
    if (split) {
      EmitChunked(doc, tokens, first, i + 1, cfg.max_tokens, &sentences);
      first = i + 1;
    }
  }
  return sentences;
}

CorpusStats ComputeCorpusStats(const std::vector<Document>& documents,
                               const std::vector<Mention>& annotations,
                               const SegmenterConfig& cfg) {
  CorpusStats stats;
  stats.documents = documents.size();
  for (const Document& doc : documents) {
    const std::vector<Sentence> sentences = SplitSentences(doc, cfg);
    stats.sentences += sentences.size();
    size_t doc_tokens = 0;
    for (const Sentence& s : sentences) doc_tokens += s.tokens.size();
    stats.tokens += doc_tokens;
    if (doc_tokens > cfg.max_tokens) ++stats.documents_over_budget;
  }

  stats.entities = annotations.size();
  std::set<std::string> surfaces;
  std::set<std::string> codes;
  std::map<std::string, std::vector<Mention>> by_doc;
  for (const Mention& m : annotations) {
    surfaces.insert(m.text);
    if (!m.code.has_value() || *m.code == kNoCode) {
      ++stats.no_code_mentions;
    } else if (IsCompositeCode(*m.code)) {
      ++stats.composite_mentions;
    } else {
      codes.insert(*m.code);
    }
    by_doc[m.doc_id].push_back(m);
  }
  stats.unique_entity_surfaces = surfaces.size();
  stats.unique_codes = codes.size();
  for (auto& [doc_id, mentions] : by_doc) {
    stats.nested_mentions += ResolveNesting(mentions).dropped.size();
  }
  return stats;
}

std::string FormatCorpusStats(const CorpusStats& stats) {
  std::ostringstream out;
  out << "documents\t" << stats.documents << "\n"
      << "sentences\t" << stats.sentences << "\n"
      << "tokens\t" << stats.tokens << "\n"
      << "entities\t" << stats.entities << "\n"
      << "unique_entity_surfaces\t" << stats.unique_entity_surfaces << "\n"
      << "unique_codes\t" << stats.unique_codes << "\n"
      << "no_code_mentions\t" << stats.no_code_mentions << "\n"
      << "composite_mentions\t" << stats.composite_mentions << "\n"
      << "nested_mentions\t" << stats.nested_mentions << "\n"
      << "documents_over_budget\t" << stats.documents_over_budget << "\n";
  return out.str();
}

}  // namespace sympel
