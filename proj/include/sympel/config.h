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

// Run configuration: a TOML-style file of [section] headers and
// `key = value` lines, where values are "quoted strings", numbers, or
// true/false. '#' starts a comment. Every key must belong to the schema
// below; relative paths resolve against the config file's directory.
//
//   [paths]      corpus annotations validation gazetteer lexicon dataset
//                model kb embeddings emissions mentions abbreviations
//   [segmenter]  max_tokens
//   [train]      learning_rate l2_penalty epochs batch_size seed
//                constrain_iob2 feature_dim
//   [augment]    replacement_probability max_new_sentences seed
//   [kb]         sources ("gazetteer,train,umls") augment_rare
//                rarity_threshold generated_per_concept seed edit_ops
//                ("insert,delete")
//   [embed]      provider ("stub" | "service") dim service_url batch_size
//   [linker]     use_sliding_window w_full w_first w_last window_fraction
//                abstain_threshold top_k include_no_code
//   [gridsearch] step

#ifndef SYMPEL_CONFIG_H_
#define SYMPEL_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sympel/augment.h"
#include "sympel/crf.h"
#include "sympel/kb.h"
#include "sympel/linker.h"
#include "sympel/textseg.h"

namespace sympel {

struct EmbedConfig {
  std::string provider = "stub";
  size_t dim = 256;
  std::string service_url;  // falls back to the SYMPEL_EMBED_URL variable
  size_t batch_size = 64;
};

struct RunConfig {
  // Keyed by [paths] entry name.
  std::map<std::string, std::filesystem::path> paths;
  SegmenterConfig segmenter;
  TrainConfig train;
  AugmentPlan augment;
  std::vector<AliasSource> kb_sources = {AliasSource::kGazetteer,
                                         AliasSource::kTrain};
  bool kb_augment_rare = false;
  KbAugmentConfig kb_augment;
  EmbedConfig embed;
  LinkerConfig linker;
  bool include_no_code = false;
  double grid_step = 0.01;

  // Throws kConfigError when the path is not configured.
  const std::filesystem::path& path(const std::string& name) const;
  bool has_path(const std::string& name) const;
};

// Raw `section.key` -> value text (quotes removed) map.
using ConfigValues = std::map<std::string, std::string>;

// Throws kConfigError with line context for syntax errors and unknown keys.
ConfigValues ParseConfigText(const std::string& text,
                             const std::string& source_name);

// Applies `values` on top of defaults. Relative paths are resolved against
// `base_dir`. Throws kConfigError for unknown keys or bad values.
RunConfig BuildRunConfig(const ConfigValues& values,
                         const std::filesystem::path& base_dir);

RunConfig LoadRunConfig(const std::filesystem::path& path,
                        const ConfigValues& overrides = {});

// Throws kConfigError listing every missing or nonexistent path.
void RequireExistingPaths(const RunConfig& cfg,
                          const std::vector<std::string>& names);

}  // namespace sympel

#endif  // SYMPEL_CONFIG_H_
