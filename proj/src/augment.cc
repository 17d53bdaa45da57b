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

#include "sympel/augment.h"

#include <algorithm>
#include <fstream>
#include <istream>

#include "sympel/error.h"
#include "sympel/kb.h"
#include "sympel/random.h"
#include "sympel/text.h"

namespace sympel {

void SynonymLexicon::Add(const std::string& code, const std::string& synonym) {
  std::vector<std::string>& list = synonyms_[code];
  if (std::find(list.begin(), list.end(), synonym) == list.end()) {
    list.push_back(synonym);
  }
}

const std::vector<std::string>* SynonymLexicon::Find(
    const std::string& code) const {
  const auto it = synonyms_.find(code);
  return it == synonyms_.end() ? nullptr : &it->second;
}

SynonymLexicon ReadSynonymLexicon(std::istream& in,
                                  const std::string& source_name) {
  SynonymLexicon lexicon;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    const std::string code = line.substr(0, tab);
    if (line_number == 1 && code == "code") continue;
    if (tab == std::string::npos || code.empty()) {
      throw Error(ErrorCode::kParseError,
                  source_name + ":" + std::to_string(line_number) +
                      ": expected code<TAB>synonym");
    }
    std::string synonym = line.substr(tab + 1);
    const size_t extra = synonym.find('\t');
    if (extra != std::string::npos) synonym.resize(extra);
    if (NormalizeSurface(synonym).empty()) continue;
    lexicon.Add(code, synonym);
  }
  return lexicon;
}

SynonymLexicon ReadSynonymLexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return ReadSynonymLexicon(in, path.string());
}

namespace {

// Builds the sentence with mention `index` replaced by `synonym`.
TaggedSentence Replace(const TaggedSentence& source, size_t index,
                       const std::string& synonym) {
  const Sentence& s = source.sentence;
  const Mention& target = source.mentions[index];
  const std::u32string text = DecodeUtf8(s.text);
  const std::u32string replacement = DecodeUtf8(synonym);
  const size_t rel_start = target.start - s.start;
  const size_t rel_end = target.end - s.start;
  const std::u32string new_text = text.substr(0, rel_start) + replacement +
                                  text.substr(rel_end);
  const long long delta = static_cast<long long>(replacement.size()) -
                          static_cast<long long>(target.end - target.start);

  TaggedSentence out;
  out.augmented = true;
  out.sentence.doc_id = s.doc_id;
  out.sentence.start = s.start;
  out.sentence.end = s.start + new_text.size();
  out.sentence.text = EncodeUtf8(new_text);
  out.sentence.tokens = Tokenize(out.sentence.text, s.start);
  for (size_t k = 0; k < source.mentions.size(); ++k) {
    Mention m = source.mentions[k];
    if (k == index) {
      m.end = m.start + replacement.size();
      m.text = synonym;
    } else if (m.start >= target.end) {
      m.start = static_cast<size_t>(static_cast<long long>(m.start) + delta);
      m.end = static_cast<size_t>(static_cast<long long>(m.end) + delta);
    }
    out.mentions.push_back(std::move(m));
  }
  return out;
}

}  // namespace

std::vector<TaggedSentence> SynonymReplace(
    std::span<const TaggedSentence> dataset, const SynonymLexicon& lexicon,
    const AugmentPlan& plan, AugmentStats* stats) {
  if (!(plan.replacement_probability >= 0.0 &&
        plan.replacement_probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "replacement_probability must lie in [0, 1]");
  }
  AugmentStats local;
  AugmentStats& st = stats != nullptr ? *stats : local;

  std::vector<TaggedSentence> out(dataset.begin(), dataset.end());
  const size_t cap = plan.max_new_sentences.value_or(SIZE_MAX);
  for (size_t i = 0; i < dataset.size() && st.emitted < cap; ++i) {
    const TaggedSentence& ts = dataset[i];
    Rng rng(DeriveSeed(plan.seed, i));
    for (size_t j = 0; j < ts.mentions.size() && st.emitted < cap; ++j) {
      const Mention& m = ts.mentions[j];
      if (!m.code.has_value() || *m.code == kNoCode ||
          IsCompositeCode(*m.code)) {
        continue;
      }
      const std::vector<std::string>* synonyms = lexicon.Find(*m.code);
      if (synonyms == nullptr) continue;
      const std::string surface = NormalizeSurface(m.text);
      std::vector<const std::string*> choices;
      for (const std::string& s : *synonyms) {
        if (NormalizeSurface(s) != surface) choices.push_back(&s);
      }
      if (choices.empty()) continue;
      ++st.candidate_mentions;
      if (!rng.Bernoulli(plan.replacement_probability)) continue;
      const std::string& synonym = *choices[rng.Uniform(choices.size())];

      TaggedSentence augmented = Replace(ts, j, synonym);
      try {
        EncodeIob2(augmented.sentence, augmented.mentions,
                   AlignmentPolicy::kStrict);
      } catch (const Error&) {
        ++st.skipped_unalignable;
        continue;
      }
      out.push_back(std::move(augmented));
      ++st.emitted;
    }
  }
  return out;
}

}  // namespace sympel
