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

#include "sympel/cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "sympel/augment.h"
#include "sympel/config.h"
#include "sympel/corpus_io.h"
#include "sympel/crf.h"
#include "sympel/crf_io.h"
#include "sympel/embed_client.h"
#include "sympel/embedding.h"
#include "sympel/error.h"
#include "sympel/eval.h"
#include "sympel/kb.h"
#include "sympel/linker.h"
#include "sympel/spans.h"
#include "sympel/textseg.h"

namespace sympel::cli {
namespace {

namespace fs = std::filesystem;

// Options shared by every subcommand.
struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::map<std::string, std::string> path_flags;  // paths.* key -> flag value
  std::string out;
};

std::string Fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

RunConfig LoadConfig(const Common& c) {
  ConfigValues overrides;
  for (const std::string& s : c.sets) {
    const size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kConfigError,
                  "--set expects section.key=value, got \"" + s + "\"");
    }
    overrides[s.substr(0, eq)] = s.substr(eq + 1);
  }
  // Flag paths are relative to the working directory, not the config file.
  for (const auto& [key, value] : c.path_flags) {
    if (!value.empty()) overrides["paths." + key] = fs::absolute(value).string();
  }
  if (c.config.empty()) return BuildRunConfig(overrides, fs::current_path());
  if (!fs::exists(c.config)) {
    throw Error(ErrorCode::kConfigError, "config file not found: " + c.config);
  }
  return LoadRunConfig(c.config, overrides);
}

void Emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.out.empty()) {
    out << content;
  } else {
    WriteFile(c.out, content);
  }
}

fs::path OutputPath(const Common& c, const RunConfig& cfg,
                    const std::string& path_key) {
  if (!c.out.empty()) return c.out;
  if (cfg.has_path(path_key)) return cfg.path(path_key);
  throw Error(ErrorCode::kConfigError,
              "no output: pass --out or set paths." + path_key);
}

SegmenterConfig Segmenter(const RunConfig& cfg) {
  SegmenterConfig seg = cfg.segmenter;
  if (cfg.has_path("abbreviations")) {
    std::istringstream in(ReadFile(cfg.path("abbreviations")));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] != '#') seg.abbreviations.insert(line);
    }
  }
  return seg;
}

std::unique_ptr<Embedder> MakeEmbedder(const RunConfig& cfg) {
  if (cfg.embed.provider == "stub") {
    return std::make_unique<StubEmbedder>(cfg.embed.dim);
  }
  ServiceConfig service;
  service.url = cfg.embed.service_url.empty() ? EmbedServiceUrlFromEnv()
                                              : cfg.embed.service_url;
  if (service.url.empty()) {
    throw Error(ErrorCode::kConfigError,
                std::string("embed.provider = service needs embed.service_url "
                            "or ") + kEmbedUrlEnv);
  }
  service.batch_size = cfg.embed.batch_size;
  return std::make_unique<ServiceEmbedder>(service);
}

std::vector<TaggedSentence> LoadOrBuildDataset(const RunConfig& cfg,
                                               std::ostream& err) {
  if (cfg.has_path("dataset")) {
    std::ifstream in(cfg.path("dataset"), std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kIoError,
                  "cannot open " + cfg.path("dataset").string());
    }
    return ReadDataset(in, cfg.path("dataset").string());
  }
  AlignmentReport report;
  auto data = BuildTaggedSentences(LoadDocuments(cfg.path("corpus")),
                                   ReadAnnotations(cfg.path("annotations")),
                                   Segmenter(cfg), &report);
  for (const std::string& w : report.warnings) err << "warning: " << w << "\n";
  return data;
}

KnowledgeBase BuildKbFromConfig(const RunConfig& cfg, bool augment_rare,
                                std::ostream& out) {
  std::vector<AliasSourceInput> inputs;
  for (AliasSource source : cfg.kb_sources) {
    AliasSourceInput input;
    input.name = std::string(AliasSourceName(source));
    input.source = source;
    switch (source) {
      case AliasSource::kGazetteer:
        input.aliases = ReadGazetteer(cfg.path("gazetteer"));
        break;
      case AliasSource::kTrain: {
        size_t composite = 0;
        input.aliases =
            AliasesFromMentions(ReadAnnotations(cfg.path("annotations")),
                                &composite);
        out << "train_composite_skipped\t" << composite << "\n";
        break;
      }
      case AliasSource::kUmls:
        // The synonym lexicon shares the code<TAB>term layout.
        input.aliases = ReadGazetteer(cfg.path("lexicon"));
        break;
      case AliasSource::kAugmentation:
        throw Error(ErrorCode::kConfigError,
                    "kb.sources cannot list augmentation; use augment_rare");
    }
    for (AliasRecord& r : input.aliases) r.source = source;
    inputs.push_back(std::move(input));
  }
  BuildStats stats;
  KnowledgeBase kb = BuildKnowledgeBase(inputs, &stats);
  for (const auto& [name, count] : stats.input_aliases) {
    out << "input_aliases\t" << AliasSourceName(name) << "\t" << count << "\n";
  }
  out << "duplicates\t" << stats.duplicates << "\n";
  out << "composite_skipped\t" << stats.composite_skipped << "\n";
  if (augment_rare) {
    KbAugmentStats aug;
    kb = AugmentRare(kb, cfg.kb_augment, &aug);
    out << "rare_codes\t" << aug.rare_codes << "\n";
    out << "augmented_records\t" << aug.generated << "\n";
  }
  out << "records\t" << kb.size() << "\n";
  out << "codes\t" << kb.code_alias_count().size() << "\n";
  return kb;
}

std::vector<std::string> SourcePaths(const RunConfig& cfg) {
  std::vector<std::string> names;
  for (AliasSource s : cfg.kb_sources) {
    if (s == AliasSource::kGazetteer) names.push_back("gazetteer");
    if (s == AliasSource::kTrain) names.push_back("annotations");
    if (s == AliasSource::kUmls) names.push_back("lexicon");
  }
  return names;
}

void WriteLinkOutput(std::ostream& out,
                     const std::vector<LinkPrediction>& predictions) {
  out << "filename\tlabel\tstart_span\tend_span\ttext\tcode\tmethod\tscore"
         "\tmatched_alias\n";
  for (const LinkPrediction& p : predictions) {
    const Mention& m = p.mention;
    out << m.doc_id << '\t' << m.entity_type << '\t' << m.start << '\t'
        << m.end << '\t' << m.text << '\t' << p.code << '\t'
        << LinkMethodName(p.method) << '\t' << Fixed(p.score, 6) << '\t'
        << p.matched_alias << '\n';
  }
}

std::vector<LinkPrediction> ReadLinkOutput(const fs::path& path) {
  std::vector<Mention> mentions = ReadAnnotations(path);
  std::istringstream in(ReadFile(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string col;
    while (std::getline(h, col, '\t')) {
      if (!col.empty() && col.back() == '\r') col.pop_back();
      header.push_back(col);
    }
  }
  size_t method_col = header.size();
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "method") method_col = i;
  }
  std::vector<LinkPrediction> predictions;
  size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= mentions.size()) break;
    LinkPrediction p;
    p.mention = mentions[row];
    p.code = mentions[row].code.value_or(std::string(kNoCode));
    p.method = LinkMethod::kCosine;
    if (method_col < header.size()) {
      std::vector<std::string> fields;
      std::istringstream f(line);
      std::string field;
      while (std::getline(f, field, '\t')) fields.push_back(field);
      const std::string method =
          method_col < fields.size() ? fields[method_col] : "";
      for (LinkMethod m : {LinkMethod::kExact, LinkMethod::kCosine,
                           LinkMethod::kCosineWindow, LinkMethod::kAbstain}) {
        if (LinkMethodName(m) == method) p.method = m;
      }
    }
    predictions.push_back(std::move(p));
    ++row;
  }
  return predictions;
}

// Each subcommand body returns the text it reports on stdout.
int Dispatch(const std::string& name, const Common& c,
             const std::map<std::string, std::string>& opts, bool flag,
             std::ostream& out, std::ostream& err) {
  const RunConfig cfg = LoadConfig(c);
  std::ostringstream report;

  if (name == "split") {
    RequireExistingPaths(cfg, {"corpus"});
    const SegmenterConfig seg = Segmenter(cfg);
    std::vector<Sentence> sentences;
    for (const Document& doc : LoadDocuments(cfg.path("corpus"))) {
      for (Sentence& s : SplitSentences(doc, seg)) {
        sentences.push_back(std::move(s));
      }
    }
    std::ostringstream table;
    WriteTokenTable(table, sentences);
    Emit(c, table.str(), out);
    if (!c.out.empty()) report << "sentences\t" << sentences.size() << "\n";
  } else if (name == "stats") {
    RequireExistingPaths(cfg, {"corpus", "annotations"});
    const CorpusStats stats =
        ComputeCorpusStats(LoadDocuments(cfg.path("corpus")),
                           ReadAnnotations(cfg.path("annotations")),
                           Segmenter(cfg));
    Emit(c, FormatCorpusStats(stats), out);
  } else if (name == "augment") {
    RequireExistingPaths(cfg, {"corpus", "annotations", "lexicon"});
    const fs::path target = OutputPath(c, cfg, "dataset");
    AlignmentReport align;
    const auto base = BuildTaggedSentences(
        LoadDocuments(cfg.path("corpus")),
        ReadAnnotations(cfg.path("annotations")), Segmenter(cfg), &align);
    for (const std::string& w : align.warnings) err << "warning: " << w << "\n";
    AugmentStats stats;
    const auto data = SynonymReplace(
        base, ReadSynonymLexicon(cfg.path("lexicon")), cfg.augment, &stats);
    std::ostringstream jsonl;
    WriteDataset(jsonl, data);
    WriteFile(target, jsonl.str());
    report << "sentences\t" << base.size() << "\n"
           << "nested_dropped\t" << align.nested_dropped << "\n"
           << "unplaced\t" << align.unplaced << "\n"
           << "text_mismatches\t" << align.text_mismatches << "\n"
           << "candidate_mentions\t" << stats.candidate_mentions << "\n"
           << "augmented_sentences\t" << stats.emitted << "\n"
           << "skipped_unalignable\t" << stats.skipped_unalignable << "\n";
  } else if (name == "train") {
    if (cfg.has_path("dataset")) {
      RequireExistingPaths(cfg, {"dataset"});
    } else {
      RequireExistingPaths(cfg, {"corpus", "annotations"});
    }
    const fs::path target = OutputPath(c, cfg, "model");
    const auto data = LoadOrBuildDataset(cfg, err);
    TrainHistory history;
    const CrfModel model = TrainCrf(data, cfg.train, &history);
    SaveCrfModel(model, target);
    for (size_t e = 0; e < history.epoch_objective.size(); ++e) {
      report << "epoch\t" << e + 1 << "\t" << Fixed(history.epoch_objective[e], 6)
             << "\n";
    }
    report << "labels\t" << model.num_labels() << "\n";
  } else if (name == "tag") {
    std::vector<std::string> need = {"model", "corpus"};
    if (cfg.has_path("emissions")) need.push_back("emissions");
    RequireExistingPaths(cfg, need);
    const CrfModel model = LoadCrfModel(cfg.path("model"));
    const SegmenterConfig seg = Segmenter(cfg);
    std::vector<Sentence> sentences;
    for (const Document& doc : LoadDocuments(cfg.path("corpus"))) {
      for (Sentence& s : SplitSentences(doc, seg)) {
        sentences.push_back(std::move(s));
      }
    }
    std::vector<Mention> predicted;
    if (cfg.has_path("emissions")) {
      std::ifstream in(cfg.path("emissions"), std::ios::binary);
      const auto emissions =
          ReadEmissions(in, model.labels, cfg.path("emissions").string());
      std::map<std::pair<std::string, size_t>, const EmissionMatrix*> index;
      for (const SentenceEmissions& e : emissions) {
        index[{e.doc_id, e.start}] = &e.scores;
      }
      for (const Sentence& s : sentences) {
        const auto it = index.find({s.doc_id, s.start});
        if (it == index.end()) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "no emissions for sentence " + s.doc_id + ":" +
                          std::to_string(s.start));
        }
        for (Mention& m : TagWithEmissions(model, s, *it->second,
                                           cfg.train.constrain_iob2)) {
          predicted.push_back(std::move(m));
        }
      }
    } else {
      predicted = TagSentences(model, sentences, cfg.train.constrain_iob2);
    }
    std::ostringstream tsv;
    WriteAnnotations(tsv, predicted);
    Emit(c, tsv.str(), out);
    if (!c.out.empty()) report << "mentions\t" << predicted.size() << "\n";
  } else if (name == "build-kb") {
    RequireExistingPaths(cfg, SourcePaths(cfg));
    const fs::path target = OutputPath(c, cfg, "kb");
    const KnowledgeBase kb =
        BuildKbFromConfig(cfg, flag || cfg.kb_augment_rare, report);
    std::ostringstream dump;
    WriteKbDump(dump, kb);
    WriteFile(target, dump.str());
  } else if (name == "embed") {
    RequireExistingPaths(cfg, {"kb"});
    const fs::path target = OutputPath(c, cfg, "embeddings");
    const KnowledgeBase kb = LoadKbDump(cfg.path("kb"));
    auto embedder = MakeEmbedder(cfg);
    const EmbeddingStore store = EmbedKnowledgeBase(kb, *embedder);
    SaveEmbeddings(store, target);
    report << "provider\t" << embedder->id() << "\n"
           << "vectors\t" << store.size() << "\n"
           << "dim\t" << store.dim() << "\n";
    if (opts.count("debug") && !opts.at("debug").empty()) {
      std::ostringstream dbg;
      WriteEmbeddingsDebug(dbg, store);
      WriteFile(opts.at("debug"), dbg.str());
    }
  } else if (name == "link") {
    const std::string mentions_key =
        cfg.has_path("mentions") ? "mentions" : "validation";
    RequireExistingPaths(cfg, {"kb", "embeddings", mentions_key});
    const KnowledgeBase kb = LoadKbDump(cfg.path("kb"));
    const EmbeddingStore store = LoadEmbeddings(cfg.path("embeddings"));
    auto embedder = MakeEmbedder(cfg);
    const auto mentions = ReadAnnotations(cfg.path(mentions_key));
    const auto predictions =
        LinkAll(mentions, kb, store, *embedder, cfg.linker);
    std::ostringstream tsv;
    WriteLinkOutput(tsv, predictions);
    Emit(c, tsv.str(), out);
    if (!c.out.empty()) report << "linked\t" << predictions.size() << "\n";
  } else if (name == "gridsearch") {
    RequireExistingPaths(cfg, {"kb", "embeddings", "validation"});
    const KnowledgeBase kb = LoadKbDump(cfg.path("kb"));
    const EmbeddingStore store = LoadEmbeddings(cfg.path("embeddings"));
    auto embedder = MakeEmbedder(cfg);
    std::vector<std::pair<Mention, std::string>> validation;
    for (const Mention& m : ReadAnnotations(cfg.path("validation"))) {
      const std::string code = m.code.value_or(std::string(kNoCode));
      if (code == kNoCode && !cfg.include_no_code) continue;
      if (IsCompositeCode(code)) continue;
      validation.emplace_back(m, code);
    }
    const GridSearchResult result =
        GridSearchWeights(validation, kb, store, *embedder, cfg.grid_step,
                          cfg.linker.weights.window_fraction);
    report << "points\t" << result.evaluated.size() << "\n"
           << "baseline_accuracy\t" << Fixed(result.baseline_accuracy, 4)
           << "\n"
           << "best_accuracy\t" << Fixed(result.accuracy, 4) << "\n"
           << "w_full\t" << Fixed(result.best.w_full, 2) << "\n"
           << "w_first\t" << Fixed(result.best.w_first, 2) << "\n"
           << "w_last\t" << Fixed(result.best.w_last, 2) << "\n";
    if (!c.out.empty()) {
      std::ostringstream grid;
      grid << "w_full\tw_first\tw_last\taccuracy\n";
      for (const GridPoint& p : result.evaluated) {
        grid << Fixed(p.weights.w_full, 2) << '\t' << Fixed(p.weights.w_first, 2)
             << '\t' << Fixed(p.weights.w_last, 2) << '\t'
             << Fixed(p.accuracy, 6) << '\n';
      }
      WriteFile(c.out, grid.str());
    }
  } else if (name == "eval-ner" || name == "eval-el") {
    const fs::path gold = opts.at("gold");
    const fs::path pred = opts.at("pred");
    for (const fs::path& p : {gold, pred}) {
      if (!fs::exists(p)) {
        throw Error(ErrorCode::kConfigError, p.string() + " does not exist");
      }
    }
    ExperimentRun run{opts.at("name"), {}};
    if (name == "eval-ner") {
      const NerMetrics m =
          ComputeNerMetrics(ReadAnnotations(gold), ReadAnnotations(pred));
      report << "P " << Fixed(m.precision) << "\tR " << Fixed(m.recall)
             << "\tF1 " << Fixed(m.f1) << "\n"
             << "tp\t" << m.tp << "\nfp\t" << m.fp << "\nfn\t" << m.fn << "\n"
             << "duplicates_removed\t" << m.gold_duplicates_removed << "\t"
             << m.predicted_duplicates_removed << "\n";
      run.metrics = {{"P", m.precision}, {"R", m.recall}, {"F1", m.f1}};
    } else {
      const bool include = flag || cfg.include_no_code;
      const LinkingReport r = ComputeLinkingAccuracy(
          ReadAnnotations(gold), ReadLinkOutput(pred), include);
      report << "Acc " << Fixed(r.accuracy) << "\n"
             << "correct\t" << r.correct << "\ntotal\t" << r.total << "\n";
      for (const auto& [method, count] : r.predicted_by_method) {
        const auto it = r.correct_by_method.find(method);
        report << "method\t" << method << "\t" << count << "\t"
               << (it == r.correct_by_method.end() ? 0 : it->second) << "\n";
      }
      run.metrics = {{"Acc", r.accuracy}};
    }
    if (!c.out.empty()) {
      const std::vector<ExperimentRun> runs = {run};
      WriteFile(c.out, FormatExperimentReport(runs).tsv);
    }
  }
  out << report.str();
  return kExitOk;
}

// Reads tables written by eval-ner/eval-el --out and prints one
// comparison table.
int Report(const std::vector<std::string>& files, const std::string& out_path,
           std::ostream& out) {
  std::vector<ExperimentRun> runs;
  for (const std::string& file : files) {
    std::istringstream in(ReadFile(file));
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::istringstream f(line);
      std::string field;
      while (std::getline(f, field, '\t')) fields.push_back(field);
      if (header.empty()) {
        header = fields;
        continue;
      }
      ExperimentRun run{fields.empty() ? "" : fields[0], {}};
      for (size_t i = 1; i < fields.size() && i < header.size(); ++i) {
        if (fields[i] == "-") continue;
        try {
          run.metrics.emplace_back(header[i], std::stod(fields[i]));
        } catch (const std::exception&) {
          throw Error(ErrorCode::kParseError,
                      file + ": bad metric value \"" + fields[i] + "\"");
        }
      }
      runs.push_back(std::move(run));
    }
  }
  const ExperimentTable table = FormatExperimentReport(runs);
  if (!out_path.empty()) WriteFile(out_path, table.tsv);
  out << table.text;
  return kExitOk;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
      return kExitConfig;
    case ErrorCode::kIoError:
      return kExitIo;
    case ErrorCode::kEmbedderError:
      return kExitEmbedder;
    default:
      return kExitFailure;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Clinical NER and entity linking toolkit", "sympel"};
  app.require_subcommand(1);

  Common common;
  std::map<std::string, std::string> opts;
  bool flag = false;
  std::vector<std::string> report_files;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", common.config, "Run configuration file");
    sub->add_option("--set", common.sets,
                    "Override a config value (section.key=value)");
  };
  auto add_path = [&](CLI::App* sub, const std::string& flag_name,
                      const std::string& key, const std::string& help) {
    sub->add_option("--" + flag_name, common.path_flags[key], help);
  };

  auto* split = app.add_subcommand("split", "Write the sentence/token table");
  add_common(split);
  add_path(split, "corpus", "corpus", "Directory of .txt documents");
  split->add_option("-o,--out", common.out, "Output file (default stdout)");

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  add_common(stats);
  add_path(stats, "corpus", "corpus", "Directory of .txt documents");
  add_path(stats, "annotations", "annotations", "Annotation TSV");
  stats->add_option("-o,--out", common.out, "Output file (default stdout)");

  auto* augment =
      app.add_subcommand("augment", "Build the tagged dataset with synonyms");
  add_common(augment);
  add_path(augment, "corpus", "corpus", "Directory of .txt documents");
  add_path(augment, "annotations", "annotations", "Annotation TSV");
  add_path(augment, "lexicon", "lexicon", "Synonym lexicon TSV");
  augment->add_option("-o,--out", common.out, "Dataset JSONL output");

  auto* train = app.add_subcommand("train", "Train the CRF tagger");
  add_common(train);
  add_path(train, "dataset", "dataset", "Dataset JSONL");
  train->add_option("-o,--out", common.out, "Model output");

  auto* tag = app.add_subcommand("tag", "Predict mentions");
  add_common(tag);
  add_path(tag, "model", "model", "CRF model file");
  add_path(tag, "corpus", "corpus", "Directory of .txt documents");
  add_path(tag, "emissions", "emissions", "External emission scores");
  tag->add_option("-o,--out", common.out, "Output TSV (default stdout)");

  auto* build_kb = app.add_subcommand("build-kb", "Build the knowledge base");
  add_common(build_kb);
  add_path(build_kb, "gazetteer", "gazetteer", "Gazetteer TSV");
  add_path(build_kb, "annotations", "annotations", "Training annotations");
  add_path(build_kb, "lexicon", "lexicon", "Synonym lexicon TSV");
  build_kb->add_flag("--augment-rare", flag, "Add rare-concept records");
  build_kb->add_option("-o,--out", common.out, "KB dump output");

  auto* embed = app.add_subcommand("embed", "Embed the knowledge base");
  add_common(embed);
  add_path(embed, "kb", "kb", "KB dump");
  embed->add_option("-o,--out", common.out, "Embedding file output");
  embed->add_option("--debug", opts["debug"], "Also write the debug TSV");

  auto* link = app.add_subcommand("link", "Link mentions to codes");
  add_common(link);
  add_path(link, "kb", "kb", "KB dump");
  add_path(link, "embeddings", "embeddings", "Embedding file");
  add_path(link, "mentions", "mentions",
           "Mentions TSV (default paths.validation)");
  link->add_option("-o,--out", common.out, "Output TSV (default stdout)");

  auto* grid = app.add_subcommand("gridsearch", "Search window weights");
  add_common(grid);
  add_path(grid, "kb", "kb", "KB dump");
  add_path(grid, "embeddings", "embeddings", "Embedding file");
  add_path(grid, "validation", "validation", "Coded validation mentions");
  grid->add_option("-o,--out", common.out, "Write every grid point");

  CLI::App* evals[2];
  int i = 0;
  for (const char* name : {"eval-ner", "eval-el"}) {
    auto* sub = app.add_subcommand(
        name, i == 0 ? "Strict span P/R/F1" : "Linking accuracy");
    add_common(sub);
    sub->add_option("--gold", opts["gold"], "Gold annotations")->required();
    sub->add_option("--pred", opts["pred"], "Predictions")->required();
    opts["name"] = "run";
    sub->add_option("--name", opts["name"], "Run name for --out");
    sub->add_option("-o,--out", common.out, "Write a one-row metrics table");
    evals[i++] = sub;
  }
  evals[1]->add_flag("--include-no-code", flag,
                     "Count gold NO_CODE mentions");

  std::string report_out;
  auto* report = app.add_subcommand("report", "Combine metric tables");
  report->add_option("tables", report_files, "Tables from --out")->required();
  report->add_option("-o,--out", report_out, "Combined TSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen == report) return Report(report_files, report_out, out);
    return Dispatch(chosen->get_name(), common, opts, flag, out, err);
  } catch (const Error& e) {
    err << "sympel " << chosen->get_name() << ": " << e.what() << "\n";
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    err << "sympel " << chosen->get_name() << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sympel::cli
