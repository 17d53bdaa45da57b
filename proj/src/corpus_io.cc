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

#include "sympel/corpus_io.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sympel/error.h"
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

size_t ParseOffset(const std::string& field, const std::string& where) {
  size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    throw Error(ErrorCode::kParseError,
                where + ": expected an offset, got \"" + field + "\"");
  }
  return static_cast<size_t>(value);
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

std::vector<Document> LoadDocuments(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIoError, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> documents;
  documents.reserve(files.size());
  for (const auto& file : files) {
    Document doc{file.stem().string(), ReadFile(file)};
    try {
      DecodeUtf8(doc.text);
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidUtf8, file.string() + ": " + e.what());
    }
    documents.push_back(std::move(doc));
  }
  return documents;
}

std::vector<Mention> ReadAnnotations(std::istream& in,
                                     const std::string& source_name) {
  std::string line;
  size_t line_number = 0;
  std::map<std::string, size_t> column;
  std::vector<Mention> mentions;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = source_name + ":" + std::to_string(line_number);
    if (column.empty()) {
      const std::vector<std::string> header = SplitTabs(line);
      for (size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
      for (const char* required :
           {"filename", "label", "start_span", "end_span", "text"}) {
        if (column.count(required) == 0) {
          throw Error(ErrorCode::kParseError,
                      where + ": header lacks column \"" + required + "\"");
        }
      }
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitTabs(line);
    auto field = [&](const char* name) -> const std::string& {
      const size_t i = column.at(name);
      if (i >= fields.size()) {
        throw Error(ErrorCode::kParseError,
                    where + ": missing column \"" + name + "\"");
      }
      return fields[i];
    };
    Mention m;
    m.doc_id = field("filename");
    m.entity_type = field("label");
    m.start = ParseOffset(field("start_span"), where);
    m.end = ParseOffset(field("end_span"), where);
    m.text = field("text");
    if (m.doc_id.empty() || m.entity_type.empty() || m.start >= m.end) {
      throw Error(ErrorCode::kParseError, where + ": invalid mention row");
    }
    if (column.count("code") > 0 && column["code"] < fields.size()) {
      const std::string& code = fields[column["code"]];
      m.code = code.empty() ? std::string(kNoCode) : code;
    }
    mentions.push_back(std::move(m));
  }
  if (column.empty()) {
    throw Error(ErrorCode::kParseError, source_name + ": missing header");
  }
  return mentions;
}

std::vector<Mention> ReadAnnotations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return ReadAnnotations(in, path.string());
}

void WriteAnnotations(std::ostream& out, const std::vector<Mention>& mentions) {
  const bool with_code =
      std::any_of(mentions.begin(), mentions.end(),
                  [](const Mention& m) { return m.code.has_value(); });
  out << "filename\tlabel\tstart_span\tend_span\ttext";
  if (with_code) out << "\tcode";
  out << "\n";
  for (const Mention& m : mentions) {
    out << m.doc_id << '\t' << m.entity_type << '\t' << m.start << '\t'
        << m.end << '\t' << m.text;
    if (with_code) out << '\t' << m.code.value_or(std::string(kNoCode));
    out << "\n";
  }
}

std::vector<TaggedSentence> BuildTaggedSentences(
    const std::vector<Document>& documents,
    const std::vector<Mention>& annotations, const SegmenterConfig& cfg,
    AlignmentReport* report) {
  AlignmentReport local;
  AlignmentReport& rep = report != nullptr ? *report : local;

  std::map<std::string, std::vector<Mention>> by_doc;
  for (const Mention& m : annotations) by_doc[m.doc_id].push_back(m);

  std::vector<TaggedSentence> data;
  for (const Document& doc : documents) {
    NestingResult nesting = ResolveNesting(by_doc[doc.doc_id]);
    rep.nested_dropped += nesting.dropped.size();
    for (const Mention& m : nesting.dropped) {
      rep.warnings.push_back("dropped nested mention " + m.doc_id + "[" +
                             std::to_string(m.start) + "," +
                             std::to_string(m.end) + ")");
    }

    const size_t base = data.size();
    for (Sentence& sentence : SplitSentences(doc, cfg)) {
      data.push_back(TaggedSentence{std::move(sentence), {}, false});
    }
    for (Mention& m : nesting.kept) {
      if (Utf8Slice(doc.text, m.start, m.end) != m.text) {
        ++rep.text_mismatches;
        rep.warnings.push_back("text mismatch for " + m.doc_id + "[" +
                               std::to_string(m.start) + "," +
                               std::to_string(m.end) + ")");
        continue;
      }
      bool placed = false;
      for (size_t i = base; i < data.size(); ++i) {
        const Sentence& s = data[i].sentence;
        if (m.start >= s.start && m.end <= s.end) {
          data[i].mentions.push_back(std::move(m));
          placed = true;
          break;
        }
      }
      if (!placed) {
        ++rep.unplaced;
        rep.warnings.push_back("mention crosses a sentence boundary: " +
                               m.doc_id + "[" + std::to_string(m.start) +
                               "," + std::to_string(m.end) + ")");
      }
    }
  }
  return data;
}

void WriteDataset(std::ostream& out, const std::vector<TaggedSentence>& data) {
  for (const TaggedSentence& ts : data) {
    nlohmann::ordered_json row;
    row["doc_id"] = ts.sentence.doc_id;
    row["start"] = ts.sentence.start;
    row["text"] = ts.sentence.text;
    row["origin"] = ts.augmented ? "augmented" : "original";
    nlohmann::ordered_json mentions = nlohmann::ordered_json::array();
    for (const Mention& m : ts.mentions) {
      nlohmann::ordered_json jm;
      jm["start"] = m.start;
      jm["end"] = m.end;
      jm["type"] = m.entity_type;
      if (m.code.has_value()) jm["code"] = *m.code;
      mentions.push_back(std::move(jm));
    }
    row["mentions"] = std::move(mentions);
    out << row.dump() << "\n";
  }
}

std::vector<TaggedSentence> ReadDataset(std::istream& in,
                                        const std::string& source_name) {
  std::vector<TaggedSentence> data;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_number);
    try {
      const nlohmann::json row = nlohmann::json::parse(line);
      TaggedSentence ts;
      ts.sentence.doc_id = row.at("doc_id").get<std::string>();
      ts.sentence.start = row.at("start").get<size_t>();
      ts.sentence.text = row.at("text").get<std::string>();
      ts.sentence.end = ts.sentence.start + CodepointCount(ts.sentence.text);
      ts.sentence.tokens = Tokenize(ts.sentence.text, ts.sentence.start);
      ts.augmented = row.value("origin", "original") == "augmented";
      for (const auto& jm : row.at("mentions")) {
        Mention m;
        m.doc_id = ts.sentence.doc_id;
        m.start = jm.at("start").get<size_t>();
        m.end = jm.at("end").get<size_t>();
        m.entity_type = jm.at("type").get<std::string>();
        if (jm.contains("code")) m.code = jm.at("code").get<std::string>();
        if (m.start < ts.sentence.start || m.end > ts.sentence.end ||
            m.start >= m.end) {
          throw Error(ErrorCode::kParseError, "mention outside sentence");
        }
        m.text = Utf8Slice(ts.sentence.text, m.start - ts.sentence.start,
                           m.end - ts.sentence.start);
        ts.mentions.push_back(std::move(m));
      }
      data.push_back(std::move(ts));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, where + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError, where + ": " + e.what());
    }
  }
  return data;
}

void WriteTokenTable(std::ostream& out,
                     const std::vector<Sentence>& sentences) {
  out << "doc_id\tsentence\tstart\tend\ttoken\n";
  std::string doc_id;
  size_t index = 0;
  for (const Sentence& s : sentences) {
    if (s.doc_id != doc_id) {
      doc_id = s.doc_id;
      index = 0;
    }
    for (const Token& t : s.tokens) {
      out << s.doc_id << '\t' << index << '\t' << t.start << '\t' << t.end
          << '\t' << t.text << '\n';
    }
    ++index;
  }
}

}  // namespace sympel
