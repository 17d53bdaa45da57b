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

#include "sympel/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sympel/corpus_io.h"
#include "sympel/error.h"

namespace sympel {
namespace {

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "paths.corpus", "paths.annotations", "paths.validation",
      "paths.gazetteer", "paths.lexicon", "paths.dataset", "paths.model",
      "paths.kb", "paths.embeddings", "paths.emissions", "paths.mentions",
      "paths.abbreviations",
      "segmenter.max_tokens",
      "train.learning_rate", "train.l2_penalty", "train.epochs",
      "train.batch_size", "train.seed", "train.constrain_iob2",
      "train.feature_dim",
      "augment.replacement_probability", "augment.max_new_sentences",
      "augment.seed",
      "kb.sources", "kb.augment_rare", "kb.rarity_threshold",
      "kb.generated_per_concept", "kb.seed", "kb.edit_ops",
      "embed.provider", "embed.dim", "embed.service_url", "embed.batch_size",
      "linker.use_sliding_window", "linker.w_full", "linker.w_first",
      "linker.w_last", "linker.window_fraction", "linker.abstain_threshold",
      "linker.top_k", "linker.include_no_code",
      "gridsearch.step",
  };
  return keys;
}

std::string Trim(const std::string& s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return std::string();
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class ValueReader {
 public:
  explicit ValueReader(const ConfigValues& values) : values_(values) {}

  const std::string* Find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  void Double(const std::string& key, double* out) const {
    if (const std::string* v = Find(key)) {
      size_t used = 0;
      try {
        *out = std::stod(*v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v->size() || !std::isfinite(*out)) {
        throw Bad(key, *v, "a number");
      }
    }
  }

  template <typename T>
  void Unsigned(const std::string& key, T* out) const {
    if (const std::string* v = Find(key)) {
      size_t used = 0;
      unsigned long long parsed = 0;
      try {
        parsed = std::stoull(*v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v->size() || (*v)[0] == '-') {
        throw Bad(key, *v, "a non-negative integer");
      }
      *out = static_cast<T>(parsed);
    }
  }

  void Bool(const std::string& key, bool* out) const {
    if (const std::string* v = Find(key)) {
      if (*v == "true") {
        *out = true;
      } else if (*v == "false") {
        *out = false;
      } else {
        throw Bad(key, *v, "true or false");
      }
    }
  }

  static Error Bad(const std::string& key, const std::string& value,
                   const std::string& expected) {
    return Error(ErrorCode::kConfigError,
                 key + " = \"" + value + "\" is not " + expected);
  }

 private:
  const ConfigValues& values_;
};

}  // namespace

const std::filesystem::path& RunConfig::path(const std::string& name) const {
  const auto it = paths.find(name);
  if (it == paths.end()) {
    throw Error(ErrorCode::kConfigError, "paths." + name + " is not set");
  }
  return it->second;
}

bool RunConfig::has_path(const std::string& name) const {
  return paths.count(name) > 0;
}

ConfigValues ParseConfigText(const std::string& text,
                             const std::string& source_name) {
  ConfigValues values;
  std::istringstream in(text);
  std::string line;
  std::string section;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string where = source_name + ":" + std::to_string(line_number);
    // Strip a comment that is not inside quotes.
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::kConfigError, where + ": bad section header");
      }
      section = Trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError, where + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw Error(ErrorCode::kConfigError, where + ": unterminated string");
      }
      value = value.substr(1, value.size() - 2);
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (KnownKeys().count(full) == 0) {
      throw Error(ErrorCode::kConfigError, where + ": unknown key " + full);
    }
    values[full] = value;
  }
  return values;
}

RunConfig BuildRunConfig(const ConfigValues& values,
                         const std::filesystem::path& base_dir) {
  for (const auto& [key, value] : values) {
    if (KnownKeys().count(key) == 0) {
      throw Error(ErrorCode::kConfigError, "unknown key " + key);
    }
  }
  RunConfig cfg;
  const ValueReader r(values);

  for (const auto& [key, value] : values) {
    if (key.rfind("paths.", 0) != 0 || value.empty()) continue;
    std::filesystem::path p(value);
    if (p.is_relative()) p = base_dir / p;
    cfg.paths[key.substr(6)] = p.lexically_normal();
  }

  r.Unsigned("segmenter.max_tokens", &cfg.segmenter.max_tokens);
  if (cfg.segmenter.max_tokens < 2) {
    throw Error(ErrorCode::kConfigError, "segmenter.max_tokens must be >= 2");
  }

  r.Double("train.learning_rate", &cfg.train.learning_rate);
  r.Double("train.l2_penalty", &cfg.train.l2_penalty);
  r.Unsigned("train.epochs", &cfg.train.epochs);
  r.Unsigned("train.batch_size", &cfg.train.batch_size);
  r.Unsigned("train.seed", &cfg.train.seed);
  r.Bool("train.constrain_iob2", &cfg.train.constrain_iob2);
  r.Unsigned("train.feature_dim", &cfg.train.feature_dim);
  if (!(cfg.train.learning_rate > 0.0) || cfg.train.l2_penalty < 0.0 ||
      cfg.train.batch_size == 0 || cfg.train.feature_dim == 0) {
    throw Error(ErrorCode::kConfigError, "invalid [train] settings");
  }

  r.Double("augment.replacement_probability",
           &cfg.augment.replacement_probability);
  if (values.count("augment.max_new_sentences") > 0) {
    size_t cap = 0;
    r.Unsigned("augment.max_new_sentences", &cap);
    cfg.augment.max_new_sentences = cap;
  }
  r.Unsigned("augment.seed", &cfg.augment.seed);
  if (!(cfg.augment.replacement_probability >= 0.0 &&
        cfg.augment.replacement_probability <= 1.0)) {
    throw Error(ErrorCode::kConfigError,
                "augment.replacement_probability must lie in [0, 1]");
  }

  if (const std::string* v = r.Find("kb.sources")) {
    cfg.kb_sources.clear();
    for (const std::string& name : SplitList(*v)) {
      try {
        cfg.kb_sources.push_back(ParseAliasSource(name));
      } catch (const Error&) {
        throw ValueReader::Bad("kb.sources", *v,
                               "a list of gazetteer, train, umls");
      }
    }
  }
  r.Bool("kb.augment_rare", &cfg.kb_augment_rare);
  r.Unsigned("kb.rarity_threshold", &cfg.kb_augment.rarity_threshold);
  r.Unsigned("kb.generated_per_concept", &cfg.kb_augment.generated_per_concept);
  r.Unsigned("kb.seed", &cfg.kb_augment.seed);
  if (const std::string* v = r.Find("kb.edit_ops")) {
    cfg.kb_augment.insert_char = false;
    cfg.kb_augment.delete_char = false;
    for (const std::string& op : SplitList(*v)) {
      if (op == "insert") {
        cfg.kb_augment.insert_char = true;
      } else if (op == "delete") {
        cfg.kb_augment.delete_char = true;
      } else {
        throw ValueReader::Bad("kb.edit_ops", *v, "a list of insert, delete");
      }
    }
  }

  if (const std::string* v = r.Find("embed.provider")) {
    if (*v != "stub" && *v != "service") {
      throw ValueReader::Bad("embed.provider", *v, "stub or service");
    }
    cfg.embed.provider = *v;
  }
  r.Unsigned("embed.dim", &cfg.embed.dim);
  if (const std::string* v = r.Find("embed.service_url")) {
    cfg.embed.service_url = *v;
  }
  r.Unsigned("embed.batch_size", &cfg.embed.batch_size);

  r.Bool("linker.use_sliding_window", &cfg.linker.use_sliding_window);
  r.Double("linker.w_full", &cfg.linker.weights.w_full);
  r.Double("linker.w_first", &cfg.linker.weights.w_first);
  r.Double("linker.w_last", &cfg.linker.weights.w_last);
  r.Double("linker.window_fraction", &cfg.linker.weights.window_fraction);
  if (values.count("linker.abstain_threshold") > 0) {
    double t = 0.0;
    r.Double("linker.abstain_threshold", &t);
    if (t < -1.0 || t > 1.0) {
      throw Error(ErrorCode::kConfigError,
                  "linker.abstain_threshold must lie in [-1, 1]");
    }
    cfg.linker.abstain_threshold = t;
  }
  r.Unsigned("linker.top_k", &cfg.linker.top_k);
  r.Bool("linker.include_no_code", &cfg.include_no_code);
  try {
    cfg.linker.weights.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kConfigError, std::string("[linker] ") + e.what());
  }

  r.Double("gridsearch.step", &cfg.grid_step);
  return cfg;
}

RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const ConfigValues& overrides) {
  ConfigValues values = ParseConfigText(ReadFile(path), path.string());
  for (const auto& [key, value] : overrides) values[key] = value;
  return BuildRunConfig(values, std::filesystem::absolute(path).parent_path());
}

void RequireExistingPaths(const RunConfig& cfg,
                          const std::vector<std::string>& names) {
  std::string problems;
  for (const std::string& name : names) {
    if (!cfg.has_path(name)) {
      problems += "\n  paths." + name + " is not set";
    } else if (!std::filesystem::exists(cfg.path(name))) {
      problems += "\n  paths." + name + " = " + cfg.path(name).string() +
                  " does not exist";
    }
  }
  if (!problems.empty()) {
    throw Error(ErrorCode::kConfigError, "invalid paths:" + problems);
  }
}

}  // namespace sympel
