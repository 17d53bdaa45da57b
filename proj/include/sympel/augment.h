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

#ifndef SYMPEL_AUGMENT_H_
#define SYMPEL_AUGMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sympel/corpus_io.h"

namespace sympel {

// code -> synonyms in first-seen order, without duplicates.
class SynonymLexicon {
 public:
  void Add(const std::string& code, const std::string& synonym);
  // nullptr when the code has no entry.
  const std::vector<std::string>* Find(const std::string& code) const;
  size_t num_codes() const { return synonyms_.size(); }
  const std::map<std::string, std::vector<std::string>>& entries() const {
    return synonyms_;
  }

 private:
  std::map<std::string, std::vector<std::string>> synonyms_;
};

// Tab-separated code, synonym; an optional "code" header row is skipped.
SynonymLexicon ReadSynonymLexicon(std::istream& in,
                                  const std::string& source_name);
SynonymLexicon ReadSynonymLexicon(const std::filesystem::path& path);

struct AugmentPlan {
  double replacement_probability = 0.5;
  std::optional<size_t> max_new_sentences;
  uint64_t seed = 7;
};

struct AugmentStats {
  size_t candidate_mentions = 0;  // mentions with a usable synonym
  size_t emitted = 0;
  size_t skipped_unalignable = 0;
};

// Returns the input sentences followed by the generated ones. Each
// generated sentence replaces exactly one coded mention with a synonym whose
// normalized form differs from the mention's, shifting later offsets by the
// length change. Each sentence draws from its own seed (plan.seed mixed with
// the sentence index). Throws kInvalidArgument for a probability outside
// [0, 1].
std::vector<TaggedSentence> SynonymReplace(
    std::span<const TaggedSentence> dataset, const SynonymLexicon& lexicon,
    const AugmentPlan& plan, AugmentStats* stats = nullptr);

}  // namespace sympel

#endif  // SYMPEL_AUGMENT_H_
