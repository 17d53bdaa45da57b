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

#ifndef SYMPEL_KB_H_
#define SYMPEL_KB_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sympel/spans.h"

namespace sympel {

enum class AliasSource { kGazetteer, kTrain, kUmls, kAugmentation };

std::string_view AliasSourceName(AliasSource source);
// Accepts the names produced by AliasSourceName. Throws kParseError.
AliasSource ParseAliasSource(std::string_view name);

struct AliasRecord {
  std::string surface;
  std::string code;
  AliasSource source = AliasSource::kGazetteer;

  bool operator==(const AliasRecord&) const = default;
};

// NFC, lowercase, whitespace runs collapsed to one space, trimmed.
// Diacritics are kept.
std::string NormalizeSurface(std::string_view s);

struct AliasSourceInput {
  std::string name;  // for diagnostics
  AliasSource source = AliasSource::kGazetteer;
  std::vector<AliasRecord> aliases;  // record sources are overridden
};

struct BuildStats {
  std::map<AliasSource, size_t> input_aliases;
  size_t duplicates = 0;
  size_t empty_skipped = 0;
  size_t composite_skipped = 0;
};

// Immutable alias dictionary. Records are unique on (normalized surface,
// code) and ordered by normalized surface, then code.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  const std::vector<AliasRecord>& records() const { return records_; }
  // Normalized surface of each record, aligned with records().
  const std::vector<std::string>& normalized() const { return normalized_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Codes whose alias normalizes to the same string as `mention_text`,
  // sorted ascending.
  std::vector<std::string> ExactLookup(std::string_view mention_text) const;

  size_t AliasCount(const std::string& code) const;
  const std::map<std::string, size_t>& code_alias_count() const {
    return code_alias_count_;
  }
  const std::map<std::string, std::vector<std::string>>& exact_index() const {
    return exact_index_;
  }

  // Record index for a (normalized surface, code) key.
  std::optional<size_t> Find(const std::string& normalized,
                             const std::string& code) const;

 private:
  friend KnowledgeBase BuildFromRecords(std::span<const AliasRecord>,
                                        BuildStats*);

  std::vector<AliasRecord> records_;
  std::vector<std::string> normalized_;
  std::map<std::string, std::vector<std::string>> exact_index_;
  std::map<std::string, size_t> code_alias_count_;
};

// Deduplicates on (normalized surface, code), keeping the first-seen
// surface and source. Composite codes and empty surfaces are skipped.
KnowledgeBase BuildFromRecords(std::span<const AliasRecord> records,
                               BuildStats* stats = nullptr);
KnowledgeBase BuildKnowledgeBase(std::span<const AliasSourceInput> sources,
                                 BuildStats* stats = nullptr);

// Tab-separated code, term (+ ignored columns). A first row starting with
// "code" is treated as a header. Throws kParseError with file/line context.
std::vector<AliasRecord> ReadGazetteer(std::istream& in,
                                       const std::string& source_name);
std::vector<AliasRecord> ReadGazetteer(const std::filesystem::path& path);

// Training mentions as aliases. Mentions without a code become NO_CODE
// records; composite mentions are skipped and counted.
std::vector<AliasRecord> AliasesFromMentions(
    const std::vector<Mention>& mentions, size_t* composite_skipped = nullptr);

// Dump with header surface, code, source, normalized_surface. Backslash,
// tab, CR and LF inside fields are escaped.
void WriteKbDump(std::ostream& out, const KnowledgeBase& kb);
KnowledgeBase ReadKbDump(std::istream& in, const std::string& source_name);
KnowledgeBase LoadKbDump(const std::filesystem::path& path);

struct KbAugmentConfig {
  size_t rarity_threshold = 5;
  size_t generated_per_concept = 5;
  uint64_t seed = 17;
  bool insert_char = true;
  bool delete_char = true;
};

struct KbAugmentStats {
  size_t rare_codes = 0;
  size_t generated = 0;
  size_t redraws = 0;
};

// For every code with fewer than rarity_threshold records (NO_CODE
// excluded), adds exactly generated_per_concept augmentation records. Each is
// one random single-character insertion (a letter drawn from the alias's own
// alphabet) or deletion applied to a uniformly chosen original alias of the
// code. Candidates that collide with an existing (normalized surface, code)
// are redrawn. Throws kDegenerateAlias when no valid edit can be found.
KnowledgeBase AugmentRare(const KnowledgeBase& kb, const KbAugmentConfig& cfg,
                          KbAugmentStats* stats = nullptr);

}  // namespace sympel

#endif  // SYMPEL_KB_H_
