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

#ifndef SYMPEL_SPANS_H_
#define SYMPEL_SPANS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sympel/textseg.h"

namespace sympel {

inline constexpr std::string_view kNoCode = "NO_CODE";
inline constexpr std::string_view kOutsideLabel = "O";

// A typed character span. Offsets are code point positions in the document.
struct Mention {
  std::string doc_id;
  size_t start = 0;
  size_t end = 0;
  std::string text;
  std::string entity_type;
  // Absent when the source carries no code column; kNoCode when the
  // annotators could not assign one.
  std::optional<std::string> code;

  bool operator==(const Mention&) const = default;
};

// Composite mentions carry several codes joined by '+'.
bool IsCompositeCode(std::string_view code);

// One label per token: "O", "B-<type>" or "I-<type>".
using TagSequence = std::vector<std::string>;

enum class AlignmentPolicy {
  // Mentions whose boundaries fall inside a token are widened to the
  // enclosing token boundaries and a warning is recorded.
  kExpand,
  // Such mentions raise Error(kMisalignedMention).
  kStrict,
};

enum class DecodeMode { kStrict, kTolerant };

// Tags the sentence tokens that intersect each mention. Mentions must lie
// within the sentence and must not overlap (after boundary expansion).
// Throws kMisalignedMention, kOverlappingMentions.
TagSequence EncodeIob2(const Sentence& sentence,
                       std::span<const Mention> mentions,
                       AlignmentPolicy policy = AlignmentPolicy::kExpand,
                       std::vector<std::string>* warnings = nullptr);

// One mention per maximal B- I- ... run. Tolerant mode treats an I- that does
// not continue a run of the same type as B-, and unknown labels as O. Strict
// mode throws kInvalidTagSequence on either. Decoded mentions carry no code.
std::vector<Mention> DecodeIob2(const TagSequence& tags,
                                const Sentence& sentence,
                                DecodeMode mode = DecodeMode::kTolerant);

// Throws kInvalidTagSequence with the offending position.
void ValidateIob2(const TagSequence& tags);
bool IsValidIob2(const TagSequence& tags);

struct NestingResult {
  std::vector<Mention> kept;
  std::vector<Mention> dropped;
};

// Keeps a maximal non-overlapping subset, preferring longer mentions and,
// among equal lengths, earlier starts. An enclosing mention therefore always
// wins over the mentions it contains. Both lists are sorted by start.
NestingResult ResolveNesting(std::span<const Mention> mentions);

bool Overlaps(const Mention& a, const Mention& b);

}  // namespace sympel

#endif  // SYMPEL_SPANS_H_
