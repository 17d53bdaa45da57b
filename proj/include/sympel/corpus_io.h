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

// Corpus ingestion and the on-disk layouts shared by the pipeline stages.
//
// Annotation files are tab-separated with a header row. Columns are located
// by name: filename, label, start_span, end_span, text and, for linking,
// code. Extra columns are ignored on read.
//
// Tagged-sentence datasets are JSON lines, one sentence per line:
//   {"doc_id": ..., "start": N, "text": ..., "origin": "original"|"augmented",
//    "mentions": [{"start": N, "end": N, "type": ..., "code": ...}, ...]}
// Mention offsets are absolute; tokens are recomputed on load.

#ifndef SYMPEL_CORPUS_IO_H_
#define SYMPEL_CORPUS_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sympel/spans.h"
#include "sympel/textseg.h"

namespace sympel {

struct TaggedSentence {
  Sentence sentence;
  std::vector<Mention> mentions;  // non-overlapping, sorted by start
  bool augmented = false;

  bool operator==(const TaggedSentence&) const = default;
};

// Reads every *.txt file under `dir`, sorted by filename; doc_id is the stem.
std::vector<Document> LoadDocuments(const std::filesystem::path& dir);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& content);

// Throws Error(kParseError) with file/line context on malformed rows.
std::vector<Mention> ReadAnnotations(std::istream& in,
                                     const std::string& source_name);
std::vector<Mention> ReadAnnotations(const std::filesystem::path& path);

// Writes the shared-task layout; the code column is written when any
// mention carries a code.
void WriteAnnotations(std::ostream& out, const std::vector<Mention>& mentions);

struct AlignmentReport {
  size_t nested_dropped = 0;
  size_t unplaced = 0;  // mentions crossing a sentence boundary
  size_t text_mismatches = 0;
  std::vector<std::string> warnings;
};

// Splits each document, resolves nesting and attaches every mention to the
// sentence containing it. Mentions whose text disagrees with the document
// slice, or that cross a sentence boundary, are skipped and reported.
std::vector<TaggedSentence> BuildTaggedSentences(
    const std::vector<Document>& documents,
    const std::vector<Mention>& annotations, const SegmenterConfig& cfg,
    AlignmentReport* report = nullptr);

void WriteDataset(std::ostream& out, const std::vector<TaggedSentence>& data);
std::vector<TaggedSentence> ReadDataset(std::istream& in,
                                        const std::string& source_name);

// Sentences, one token per row: doc_id, sentence, start, end, token.
void WriteTokenTable(std::ostream& out, const std::vector<Sentence>& sentences);

}  // namespace sympel

#endif  // SYMPEL_CORPUS_IO_H_
