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

#include <algorithm>
#include <numeric>

#include "sympel/error.h"
#include "sympel/text.h"

namespace sympel {
namespace {

struct ParsedLabel {
  char prefix = 'O';  // 'O', 'B', 'I', or '?' when malformed
  std::string_view type;
};

ParsedLabel ParseLabel(std::string_view label) {
  if (label == kOutsideLabel) return {'O', {}};
  if (label.size() > 2 && (label[0] == 'B' || label[0] == 'I') &&
      label[1] == '-') {
    return {label[0], label.substr(2)};
  }
  return {'?', {}};
}

std::string MentionDescription(const Mention& m) {
  return m.doc_id + "[" + std::to_string(m.start) + "," +
         std::to_string(m.end) + ") \"" + m.text + "\"";
}

}  // namespace

bool IsCompositeCode(std::string_view code) {
  return code.find('+') != std::string_view::npos;
}

bool Overlaps(const Mention& a, const Mention& b) {
  return a.doc_id == b.doc_id && a.start < b.end && b.start < a.end;
}

TagSequence EncodeIob2(const Sentence& sentence,
                       std::span<const Mention> mentions,
                       AlignmentPolicy policy,
                       std::vector<std::string>* warnings) {
  const std::vector<Token>& tokens = sentence.tokens;
  TagSequence tags(tokens.size(), std::string(kOutsideLabel));
  std::vector<bool> taken(tokens.size(), false);

  for (const Mention& m : mentions) {
    if (m.start >= m.end || m.start < sentence.start || m.end > sentence.end) {
      throw Error(ErrorCode::kMisalignedMention,
                  MentionDescription(m) + " is outside sentence [" +
                      std::to_string(sentence.start) + "," +
                      std::to_string(sentence.end) + ")");
    }
    size_t first = tokens.size();
    size_t last = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].start < m.end && m.start < tokens[i].end) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == tokens.size()) {
      throw Error(ErrorCode::kMisalignedMention,
                  MentionDescription(m) + " covers no token");
    }
    if (tokens[first].start != m.start || tokens[last].end != m.end) {
      if (policy == AlignmentPolicy::kStrict) {
        throw Error(ErrorCode::kMisalignedMention,
                    MentionDescription(m) + " has a boundary inside a token");
      }
      if (warnings != nullptr) {
        warnings->push_back("expanded " + MentionDescription(m) + " to [" +
                            std::to_string(tokens[first].start) + "," +
                            std::to_string(tokens[last].end) + ")");
      }
    }
    for (size_t i = first; i <= last; ++i) {
      if (taken[i]) {
        throw Error(ErrorCode::kOverlappingMentions,
                    MentionDescription(m) + " overlaps another mention at "
                        "token \"" + tokens[i].text + "\"");
      }
      taken[i] = true;
      tags[i] = (i == first ? "B-" : "I-") + m.entity_type;
    }
  }
  return tags;
}

void ValidateIob2(const TagSequence& tags) {
  ParsedLabel previous;
  for (size_t i = 0; i < tags.size(); ++i) {
    const ParsedLabel current = ParseLabel(tags[i]);
    if (current.prefix == '?') {
      throw Error(ErrorCode::kInvalidTagSequence,
                  "malformed label \"" + tags[i] + "\" at position " +
                      std::to_string(i));
    }
    if (current.prefix == 'I' &&
        (previous.prefix == 'O' || previous.type != current.type)) {
      throw Error(ErrorCode::kInvalidTagSequence,
                  "\"" + tags[i] + "\" at position " + std::to_string(i) +
                      " does not continue a mention of the same type");
    }
    previous = current;
  }
}

bool IsValidIob2(const TagSequence& tags) {
  try {
    ValidateIob2(tags);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Mention> DecodeIob2(const TagSequence& tags,
                                const Sentence& sentence, DecodeMode mode) {
  if (tags.size() != sentence.tokens.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(tags.size()) + " tags for " +
                    std::to_string(sentence.tokens.size()) + " tokens");
  }
  if (mode == DecodeMode::kStrict) ValidateIob2(tags);

  std::vector<Mention> mentions;
  auto close = [&](size_t first, size_t last, std::string_view type) {
    Mention m;
    m.doc_id = sentence.doc_id;
    m.start = sentence.tokens[first].start;
    m.end = sentence.tokens[last].end;
    m.text = Utf8Slice(sentence.text, m.start - sentence.start,
                       m.end - sentence.start);
    m.entity_type = std::string(type);
    mentions.push_back(std::move(m));
  };

  bool open = false;
  size_t run_start = 0;
  std::string_view run_type;
  for (size_t i = 0; i < tags.size(); ++i) {
    ParsedLabel label = ParseLabel(tags[i]);
    if (label.prefix == '?') label = {'O', {}};
    const bool continues = label.prefix == 'I' && open && label.type == run_type;
    if (continues) continue;
    if (open) close(run_start, i - 1, run_type);
    open = label.prefix != 'O';
    if (open) {
      run_start = i;
      run_type = label.type;
    }
  }
  if (open) close(run_start, tags.size() - 1, run_type);
  return mentions;
}

NestingResult ResolveNesting(std::span<const Mention> mentions) {
  std::vector<size_t> order(mentions.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const size_t len_a = mentions[a].end - mentions[a].start;
    const size_t len_b = mentions[b].end - mentions[b].start;
    if (len_a != len_b) return len_a > len_b;
    return mentions[a].start < mentions[b].start;
  });

  NestingResult result;
  for (size_t index : order) {
    const Mention& m = mentions[index];
    const bool clashes =
        std::any_of(result.kept.begin(), result.kept.end(),
                    [&](const Mention& k) { return Overlaps(k, m); });
    (clashes ? result.dropped : result.kept).push_back(m);
  }
  auto by_start = [](const Mention& a, const Mention& b) {
    if (a.doc_id != b.doc_id) return a.doc_id < b.doc_id;
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  };
  std::stable_sort(result.kept.begin(), result.kept.end(), by_start);
  std::stable_sort(result.dropped.begin(), result.dropped.end(), by_start);
  return result;
}

}  // namespace sympel
