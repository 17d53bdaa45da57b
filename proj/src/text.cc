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

#include "sympel/text.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <string>

#include "sympel/error.h"

namespace sympel {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kMisalignedMention: return "MisalignedMention";
    case ErrorCode::kOverlappingMentions: return "OverlappingMentions";
    case ErrorCode::kInvalidTagSequence: return "InvalidTagSequence";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyMention: return "EmptyMention";
    case ErrorCode::kEmptyStore: return "EmptyStore";
    case ErrorCode::kEmptyValidation: return "EmptyValidation";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDegenerateAlias: return "DegenerateAlias";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kEmbedderError: return "EmbedderError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw Error(ErrorCode::kInvalidUtf8,
                  "malformed sequence at byte " + std::to_string(at));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string EncodeUtf8(char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
  return std::string(reinterpret_cast<const char*>(buf), n);
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) out += EncodeUtf8(c);
  return out;
}

size_t CodepointCount(std::string_view text) {
  size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string Utf8Slice(std::string_view text, size_t begin, size_t end) {
  size_t cp = 0;
  size_t byte_begin = text.size();
  size_t byte_end = text.size();
  for (size_t i = 0; i <= text.size(); ++i) {
    const bool boundary =
        i == text.size() || (static_cast<unsigned char>(text[i]) & 0xC0) != 0x80;
    if (!boundary) continue;
    if (cp == begin) byte_begin = i;
    if (cp == end) {
      byte_end = i;
      break;
    }
    ++cp;
  }
  if (byte_begin > byte_end) return std::string();
  return std::string(text.substr(byte_begin, byte_end - byte_begin));
}

bool IsSpace(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }
bool IsUpper(char32_t c) { return u_isUUppercase(static_cast<UChar32>(c)); }
bool IsDigit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }
bool IsAlpha(char32_t c) { return u_isUAlphabetic(static_cast<UChar32>(c)); }

bool IsWordChar(char32_t c) {
  const auto cp = static_cast<UChar32>(c);
  if (u_isalnum(cp)) return true;
  const int8_t type = u_charType(cp);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

std::string NfcLower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "ICU NFC normalizer unavailable");
  }
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s = nfc->normalize(s, status);
  s.toLower(icu::Locale::getRoot());
  // Full case mapping can produce decomposed sequences (e.g. U+0130).
  s = nfc->normalize(s, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::kInvalidArgument, "normalization failed");
  }
  std::string out;
  s.toUTF8String(out);
  return out;
}

}  // namespace sympel
