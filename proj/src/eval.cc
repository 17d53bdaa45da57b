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

#include "sympel/eval.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "sympel/error.h"

namespace sympel {
namespace {

using SpanKey = std::tuple<std::string, size_t, size_t, std::string>;

std::set<SpanKey> UniqueSpans(std::span<const Mention> mentions,
                              size_t* removed) {
  std::set<SpanKey> keys;
  for (const Mention& m : mentions) {
    if (!keys.emplace(m.doc_id, m.start, m.end, m.entity_type).second) {
      ++*removed;
    }
  }
  return keys;
}

double Ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

NerMetrics ComputeNerMetrics(std::span<const Mention> gold,
                             std::span<const Mention> predicted) {
  NerMetrics m;
  const std::set<SpanKey> gold_keys =
      UniqueSpans(gold, &m.gold_duplicates_removed);
  const std::set<SpanKey> pred_keys =
      UniqueSpans(predicted, &m.predicted_duplicates_removed);
  for (const SpanKey& key : pred_keys) m.tp += gold_keys.count(key);
  m.fp = pred_keys.size() - m.tp;
  m.fn = gold_keys.size() - m.tp;
  m.precision = Ratio(m.tp, m.tp + m.fp);
  m.recall = Ratio(m.tp, m.tp + m.fn);
  m.f1 = m.precision + m.recall == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

LinkingReport ComputeLinkingAccuracy(
    std::span<const Mention> gold, std::span<const LinkPrediction> predictions,
    bool include_no_code) {
  using Key = std::tuple<std::string, size_t, size_t>;
  std::map<Key, const LinkPrediction*> by_span;
  for (const LinkPrediction& p : predictions) {
    by_span.emplace(Key{p.mention.doc_id, p.mention.start, p.mention.end}, &p);
  }

  LinkingReport report;
  report.include_no_code = include_no_code;
  std::vector<std::string> missing;
  for (const Mention& g : gold) {
    const std::string gold_code = g.code.value_or(std::string(kNoCode));
    if (!include_no_code && gold_code == kNoCode) continue;
    const auto it = by_span.find(Key{g.doc_id, g.start, g.end});
    if (it == by_span.end()) {
      missing.push_back(g.doc_id + "[" + std::to_string(g.start) + "," +
                        std::to_string(g.end) + ")");
      continue;
    }
    const LinkPrediction& p = *it->second;
    const std::string method(LinkMethodName(p.method));
    ++report.total;
    ++report.predicted_by_method[method];
    if (p.code == gold_code) {
      ++report.correct;
      ++report.correct_by_method[method];
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (size_t i = 0; i < missing.size() && i < 10; ++i) {
      list += (i > 0 ? ", " : "") + missing[i];
    }
    if (missing.size() > 10) list += ", ...";
    throw Error(ErrorCode::kMissingPrediction,
                std::to_string(missing.size()) +
                    " gold mentions lack a prediction: " + list);
  }
  report.accuracy = Ratio(report.correct, report.total);
  return report;
}

ExperimentTable FormatExperimentReport(std::span<const ExperimentRun> runs) {
  std::vector<std::string> columns;
  for (const ExperimentRun& run : runs) {
    for (const auto& [name, value] : run.metrics) {
      if (std::find(columns.begin(), columns.end(), name) == columns.end()) {
        columns.push_back(name);
      }
    }
  }

  // cells[r][c]: formatted value, or "-" when the run lacks the metric.
  std::vector<std::vector<std::string>> cells(runs.size());
  std::vector<std::vector<bool>> is_max(runs.size(),
                                        std::vector<bool>(columns.size()));
  for (size_t c = 0; c < columns.size(); ++c) {
    bool any = false;
    double max = 0.0;
    for (const ExperimentRun& run : runs) {
      for (const auto& [name, value] : run.metrics) {
        if (name == columns[c] && (!any || value > max)) {
          max = value;
          any = true;
        }
      }
    }
    for (size_t r = 0; r < runs.size(); ++r) {
      std::string cell = "-";
      for (const auto& [name, value] : runs[r].metrics) {
        if (name != columns[c]) continue;
        cell = FormatValue(value);
        is_max[r][c] = value == max;
      }
      cells[r].push_back(cell);
    }
  }

  ExperimentTable table;
  std::ostringstream tsv;
  tsv << "run";
  for (const std::string& c : columns) tsv << '\t' << c;
  tsv << '\n';
  for (size_t r = 0; r < runs.size(); ++r) {
    tsv << runs[r].name;
    for (const std::string& cell : cells[r]) tsv << '\t' << cell;
    tsv << '\n';
  }
  table.tsv = tsv.str();

  std::vector<size_t> width(columns.size() + 1, 3);
  for (const ExperimentRun& run : runs) {
    width[0] = std::max(width[0], run.name.size());
  }
  for (size_t c = 0; c < columns.size(); ++c) {
    width[c + 1] = std::max(columns[c].size(), size_t{6});
  }
  auto pad = [](const std::string& s, size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  std::ostringstream text;
  text << pad("run", width[0]);
  for (size_t c = 0; c < columns.size(); ++c) {
    text << "  " << pad(columns[c], width[c + 1]);
  }
  text << '\n';
  for (size_t r = 0; r < runs.size(); ++r) {
    text << pad(runs[r].name, width[0]);
    for (size_t c = 0; c < columns.size(); ++c) {
      text << "  "
           << pad(cells[r][c] + (is_max[r][c] ? "*" : ""), width[c + 1]);
    }
    text << '\n';
  }
  table.text = text.str();
  return table;
}

}  // namespace sympel
