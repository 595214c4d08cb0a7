// Copyright 2026 The histner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "histner/error.h"
#include "histner/training.h"

namespace histner {

namespace {

using nlohmann::ordered_json;

constexpr size_t kEvalChunk = 256;

RegionScores Score(std::span<const Sentence *const> gold,
                   std::span<const TagSequence *const> pred) {
  std::vector<TagSequence> g, p;
  std::vector<std::vector<EntitySpan>> gs, ps;
  for (size_t i = 0; i < gold.size(); ++i) {
    g.push_back(gold[i]->tags);
    p.push_back(*pred[i]);
    gs.push_back(DecodeIob(gold[i]->tags));
    ps.push_back(DecodeIob(*pred[i]));
  }
  RegionScores r;
  r.sentences = static_cast<int64_t>(gold.size());
  r.accuracy = TokenAccuracy(g, p);
  r.f1 = StrictF1(gs, ps).overall;
  return r;
}

ordered_json ScoresJson(const RegionScores &s) {
  ordered_json j;
  j["sentences"] = s.sentences;
  j["accuracy"] = s.accuracy;
  j["precision"] = s.f1.precision;
  j["recall"] = s.f1.recall;
  j["f1"] = s.f1.f1;
  j["tp"] = s.f1.tp;
  j["fp"] = s.f1.fp;
  j["fn"] = s.f1.fn;
  return j;
}

}  // namespace

EvalReport ScorePredictions(std::span<const Sentence> gold,
                            std::span<const TagSequence> predicted) {
  if (gold.empty()) throw ConfigError("evaluate: empty subset");
  if (gold.size() != predicted.size()) {
    throw ValidationError("evaluate: prediction count does not match the subset");
  }
  std::vector<const Sentence *> all_g;
  std::vector<const TagSequence *> all_p;
  std::array<std::vector<const Sentence *>, kNumRegions> rg;
  std::array<std::vector<const TagSequence *>, kNumRegions> rp;
  for (size_t i = 0; i < gold.size(); ++i) {
    all_g.push_back(&gold[i]);
    all_p.push_back(&predicted[i]);
    rg[Index(gold[i].region)].push_back(&gold[i]);
    rp[Index(gold[i].region)].push_back(&predicted[i]);
  }
  EvalReport report;
  report.overall = Score(all_g, all_p);
  for (int r = 0; r < kNumRegions; ++r) {
    if (!rg[r].empty()) report.per_region[r] = Score(rg[r], rp[r]);
  }
  std::vector<std::vector<EntitySpan>> gs, ps;
  for (size_t i = 0; i < gold.size(); ++i) {
    gs.push_back(DecodeIob(gold[i].tags));
    ps.push_back(DecodeIob(predicted[i]));
  }
  report.per_label = StrictF1(gs, ps).per_label;
  return report;
}

EvalReport Evaluate(const TaggerParams &params, std::span<const Sentence> subset) {
  if (subset.empty()) throw ConfigError("evaluate: empty subset");
  std::vector<TagSequence> predicted;
  predicted.reserve(subset.size());
  int64_t domain_correct = 0, domain_total = 0;
  for (size_t start = 0; start < subset.size(); start += kEvalChunk) {
    const size_t end = std::min(subset.size(), start + kEvalChunk);
    std::vector<std::vector<int>> ids;
    for (size_t i = start; i < end; ++i) {
      ids.push_back(Featurize(subset[i], params.config.vocab_size));
    }
    ad::Graph g;
    const BatchGraph b = BuildBatch(g, params, ids);
    const ad::Array &ner = b.ner_logits.value();
    const ad::Array &dom = b.domain_logits.value();
    for (size_t k = 0; k < ids.size(); ++k) {
      TagSequence tags;
      const int region = Index(subset[start + k].region);
      for (size_t row = b.offsets[k]; row < b.offsets[k + 1]; ++row) {
        size_t best = 0;
        for (size_t c = 1; c < ner.cols(); ++c) {
          if (ner.at(row, c) > ner.at(row, best)) best = c;
        }
        tags.push_back(Tag::FromCode(static_cast<int>(best)));
        size_t best_d = 0;
        for (size_t c = 1; c < dom.cols(); ++c) {
          if (dom.at(row, c) > dom.at(row, best_d)) best_d = c;
        }
        domain_correct += static_cast<int>(best_d) == region;
        ++domain_total;
      }
      predicted.push_back(std::move(tags));
    }
  }
  EvalReport report = ScorePredictions(subset, predicted);
  report.domain_accuracy =
      static_cast<double>(domain_correct) / static_cast<double>(domain_total);
  return report;
}

ordered_json ToJson(const EvalReport &report) {
  ordered_json j;
  j["overall"] = ScoresJson(report.overall);
  ordered_json per_label = ordered_json::object();
  for (EntityLabel l : kAllLabels) {
    per_label[std::string(LabelName(l))] = ToJson(report.per_label[Index(l)]);
  }
  j["per_label"] = per_label;
  ordered_json per_region = ordered_json::object();
  for (Region r : kAllRegions) {
    if (report.per_region[Index(r)]) {
      per_region[std::string(RegionName(r))] = ScoresJson(*report.per_region[Index(r)]);
    }
  }
  j["per_region"] = per_region;
  j["domain_accuracy"] = report.domain_accuracy;
  return j;
}

void PrintEvalReport(const EvalReport &report, std::ostream &out) {
  char buf[64];
  out << "           ";
  for (Region r : kAllRegions) {
    std::snprintf(buf, sizeof(buf), "%-16s", std::string(RegionShortName(r)).c_str());
    out << buf;
  }
  out << "Total\n           ";
  for (int k = 0; k <= kNumRegions; ++k) out << "Acc     F1      ";
  out << '\n' << "           ";
  auto cell = [&](const std::optional<RegionScores> &s) {
    if (s) {
      std::snprintf(buf, sizeof(buf), "%-8.2f%-8.2f", 100.0 * s->accuracy, 100.0 * s->f1.f1);
    } else {
      std::snprintf(buf, sizeof(buf), "%-8s%-8s", "-", "-");
    }
    out << buf;
  };
  for (Region r : kAllRegions) cell(report.per_region[Index(r)]);
  cell(report.overall);
  out << "\n\n";
  for (EntityLabel l : kAllLabels) {
    std::snprintf(buf, sizeof(buf), "%-14s", std::string(LabelName(l)).c_str());
    out << buf;
  }
  out << '\n';
  for (EntityLabel l : kAllLabels) {
    std::snprintf(buf, sizeof(buf), "%-14.2f", 100.0 * report.per_label[Index(l)].f1);
    out << buf;
  }
  out << '\n';
  std::snprintf(buf, sizeof(buf), "\ndomain accuracy %.4f\n", report.domain_accuracy);
  out << buf;
}

}  // namespace histner
