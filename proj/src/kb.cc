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

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "sympel/error.h"
#include "sympel/random.h"
#include "sympel/text.h"

namespace sympel {
namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  size_t begin = 0;
  while (true) {
    const size_t tab = line.find('\t', begin);
    fields.push_back(line.substr(begin, tab - begin));
    if (tab == std::string::npos) break;
    begin = tab + 1;
  }
  return fields;
}

std::string Escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string Unescape(std::string_view s, const std::string& where) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i == s.size()) {
      throw Error(ErrorCode::kParseError, where + ": dangling escape");
    }
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default:
        throw Error(ErrorCode::kParseError, where + ": bad escape");
    }
  }
  return out;
}

void StripCr(std::string* line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

}  // namespace

std::string_view AliasSourceName(AliasSource source) {
  switch (source) {
    case AliasSource::kGazetteer: return "gazetteer";
    case AliasSource::kTrain: return "train";
    case AliasSource::kUmls: return "umls";
    case AliasSource::kAugmentation: return "augmentation";
  }
  return "unknown";
}

AliasSource ParseAliasSource(std::string_view name) {
  for (AliasSource s : {AliasSource::kGazetteer, AliasSource::kTrain,
                        AliasSource::kUmls, AliasSource::kAugmentation}) {
    if (AliasSourceName(s) == name) return s;
  }
  throw Error(ErrorCode::kParseError,
              "unknown alias source \"" + std::string(name) + "\"");
}

std::string NormalizeSurface(std::string_view s) {
  const std::u32string lowered = DecodeUtf8(NfcLower(s));
  std::u32string out;
  bool pending_space = false;
  for (char32_t c : lowered) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return EncodeUtf8(out);
}

std::vector<std::string> KnowledgeBase::ExactLookup(
    std::string_view mention_text) const {
  const auto it = exact_index_.find(NormalizeSurface(mention_text));
  if (it == exact_index_.end()) return {};
  return it->second;
}

size_t KnowledgeBase::AliasCount(const std::string& code) const {
  const auto it = code_alias_count_.find(code);
  return it == code_alias_count_.end() ? 0 : it->second;
}

std::optional<size_t> KnowledgeBase::Find(const std::string& normalized,
                                          const std::string& code) const {
  size_t lo = 0;
  size_t hi = records_.size();
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    const int c = normalized_[mid].compare(normalized);
    if (c < 0 || (c == 0 && records_[mid].code < code)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < records_.size() && normalized_[lo] == normalized &&
      records_[lo].code == code) {
    return lo;
  }
  return std::nullopt;
}

KnowledgeBase BuildFromRecords(std::span<const AliasRecord> records,
                               BuildStats* stats) {
  BuildStats local;
  BuildStats& st = stats != nullptr ? *stats : local;

  struct Entry {
    std::string normalized;
    AliasRecord record;
  };
  std::vector<Entry> entries;
  std::set<std::pair<std::string, std::string>> seen;
  for (const AliasRecord& r : records) {
    ++st.input_aliases[r.source];
    if (IsCompositeCode(r.code)) {
      ++st.composite_skipped;
      continue;
    }
    std::string normalized = NormalizeSurface(r.surface);
    if (normalized.empty() || r.code.empty()) {
      ++st.empty_skipped;
      continue;
    }
    if (!seen.emplace(normalized, r.code).second) {
      ++st.duplicates;
      continue;
    }
    entries.push_back(Entry{std::move(normalized), r});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) {
              if (a.normalized != b.normalized) {
                return a.normalized < b.normalized;
              }
              return a.record.code < b.record.code;
            });

  KnowledgeBase kb;
  kb.records_.reserve(entries.size());
  kb.normalized_.reserve(entries.size());
  for (Entry& e : entries) {
    // Codes arrive in ascending order within one normalized surface.
    kb.exact_index_[e.normalized].push_back(e.record.code);
    ++kb.code_alias_count_[e.record.code];
    kb.normalized_.push_back(std::move(e.normalized));
    kb.records_.push_back(std::move(e.record));
  }
  return kb;
}

KnowledgeBase BuildKnowledgeBase(std::span<const AliasSourceInput> sources,
                                 BuildStats* stats) {
  std::vector<AliasRecord> all;
  for (const AliasSourceInput& input : sources) {
    for (AliasRecord r : input.aliases) {
      r.source = input.source;
      all.push_back(std::move(r));
    }
  }
  return BuildFromRecords(all, stats);
}

std::vector<AliasRecord> ReadGazetteer(std::istream& in,
                                       const std::string& source_name) {
  std::vector<AliasRecord> out;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    StripCr(&line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitTabs(line);
    if (line_number == 1 && fields[0] == "code") continue;
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorCode::kParseError,
                  source_name + ":" + std::to_string(line_number) +
                      ": expected code<TAB>term");
    }
    try {
      DecodeUtf8(fields[1]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, source_name + ":" +
                                              std::to_string(line_number) +
                                              ": " + e.what());
    }
    out.push_back(AliasRecord{fields[1], fields[0], AliasSource::kGazetteer});
  }
  return out;
}

std::vector<AliasRecord> ReadGazetteer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return ReadGazetteer(in, path.string());
}

std::vector<AliasRecord> AliasesFromMentions(
    const std::vector<Mention>& mentions, size_t* composite_skipped) {
  std::vector<AliasRecord> out;
  for (const Mention& m : mentions) {
    const std::string code = m.code.value_or(std::string(kNoCode));
    if (IsCompositeCode(code)) {
      if (composite_skipped != nullptr) ++*composite_skipped;
      continue;
    }
    out.push_back(AliasRecord{m.text, code, AliasSource::kTrain});
  }
  return out;
}

void WriteKbDump(std::ostream& out, const KnowledgeBase& kb) {
  out << "surface\tcode\tsource\tnormalized_surface\n";
  for (size_t i = 0; i < kb.size(); ++i) {
    const AliasRecord& r = kb.records()[i];
    out << Escape(r.surface) << '\t' << Escape(r.code) << '\t'
        << AliasSourceName(r.source) << '\t' << Escape(kb.normalized()[i])
        << '\n';
  }
}

KnowledgeBase ReadKbDump(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParseError, source_name + ": empty KB dump");
  }
  StripCr(&line);
  if (line != "surface\tcode\tsource\tnormalized_surface") {
    throw Error(ErrorCode::kParseError, source_name + ":1: bad header");
  }
  std::vector<AliasRecord> records;
  std::vector<std::string> normalized;
  size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    StripCr(&line);
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_number);
    const std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kParseError, where + ": expected 4 columns");
    }
    AliasRecord r{Unescape(fields[0], where), Unescape(fields[1], where),
                  AliasSource::kGazetteer};
    try {
      r.source = ParseAliasSource(fields[2]);
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, where + ": " + e.what());
    }
    records.push_back(std::move(r));
    normalized.push_back(Unescape(fields[3], where));
  }
  BuildStats stats;
  KnowledgeBase kb = BuildFromRecords(records, &stats);
  if (kb.size() != records.size() || kb.normalized() != normalized) {
    throw Error(ErrorCode::kParseError,
                source_name + ": dump is not a normalized, deduplicated KB");
  }
  return kb;
}

KnowledgeBase LoadKbDump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return ReadKbDump(in, path.string());
}

KnowledgeBase AugmentRare(const KnowledgeBase& kb, const KbAugmentConfig& cfg,
                          KbAugmentStats* stats) {
  if (cfg.rarity_threshold == 0 || cfg.generated_per_concept == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "rarity_threshold and generated_per_concept must be positive");
  }
  std::vector<bool> ops;  // true = insert
  if (cfg.insert_char) ops.push_back(true);
  if (cfg.delete_char) ops.push_back(false);
  if (ops.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no edit operations enabled");
  }
  KbAugmentStats local;
  KbAugmentStats& st = stats != nullptr ? *stats : local;

  std::map<std::string, std::vector<size_t>> by_code;
  for (size_t i = 0; i < kb.size(); ++i) {
    by_code[kb.records()[i].code].push_back(i);
  }

  std::vector<AliasRecord> records = kb.records();
  std::set<std::pair<std::string, std::string>> taken;
  for (size_t i = 0; i < kb.size(); ++i) {
    taken.emplace(kb.normalized()[i], kb.records()[i].code);
  }

  constexpr size_t kMaxAttempts = 1000;
  for (const auto& [code, originals] : by_code) {
    if (code == kNoCode || originals.size() >= cfg.rarity_threshold) continue;
    ++st.rare_codes;
    Rng rng(DeriveSeed(cfg.seed, Fnv1a64(code)));
    for (size_t n = 0; n < cfg.generated_per_concept; ++n) {
      bool done = false;
      for (size_t attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
        if (attempt > 0) ++st.redraws;
        const AliasRecord& base =
            kb.records()[originals[rng.Uniform(originals.size())]];
        const bool insert = ops[rng.Uniform(ops.size())];
        std::u32string chars = DecodeUtf8(base.surface);
        if (insert) {
          std::set<char32_t> alphabet;
          for (char32_t c : chars) {
            if (IsAlpha(c)) alphabet.insert(c);
          }
          if (alphabet.empty()) continue;
          const std::vector<char32_t> letters(alphabet.begin(), alphabet.end());
          const char32_t letter = letters[rng.Uniform(letters.size())];
          chars.insert(chars.begin() + rng.Uniform(chars.size() + 1), letter);
        } else {
          if (chars.size() <= 1) continue;
          chars.erase(chars.begin() + rng.Uniform(chars.size()));
        }
        std::string surface = EncodeUtf8(chars);
        std::string normalized = NormalizeSurface(surface);
        if (normalized.empty() || !taken.emplace(normalized, code).second) {
          continue;
        }
        records.push_back(
            AliasRecord{std::move(surface), code, AliasSource::kAugmentation});
        ++st.generated;
        done = true;
      }
      if (!done) {
        throw Error(ErrorCode::kDegenerateAlias,
                    "no valid single-character edit for code " + code);
      }
    }
  }
  return BuildFromRecords(records);
}

}  // namespace sympel
