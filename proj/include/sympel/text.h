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

// UTF-8 and character-class helpers. All offsets exposed by the library are
// Unicode scalar-value positions, never byte positions.

#ifndef SYMPEL_TEXT_H_
#define SYMPEL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace sympel {

// Throws Error(kInvalidUtf8) on malformed input.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t c);

size_t CodepointCount(std::string_view text);

// Substring by code point positions [begin, end).
std::string Utf8Slice(std::string_view text, size_t begin, size_t end);

bool IsSpace(char32_t c);
bool IsUpper(char32_t c);
bool IsDigit(char32_t c);
bool IsAlpha(char32_t c);
// Letters, digits and combining marks; the characters that form word tokens.
bool IsWordChar(char32_t c);

// NFC composition followed by full (root locale) lowercasing.
std::string NfcLower(std::string_view text);

// 64-bit FNV-1a over the raw bytes; stable across platforms.
inline uint64_t Fnv1a64(std::string_view bytes,
                        uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace sympel

#endif  // SYMPEL_TEXT_H_
