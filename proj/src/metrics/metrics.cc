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
#include <map>
#include <tuple>

#include "histner/error.h"
#include "histner/metrics.h"

namespace histner {

namespace {

double SafeDiv(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

using SpanKey = std::tuple<int, size_t, size_t>;

SpanKey KeyOf(const EntitySpan &s) { return {Index(s.label), s.first, s.last}; }

}  // namespace

Prf Prf::FromCounts(int64_t tp, int64_t fp, int64_t fn) {
  Prf p;
  p.tp = tp;
  p.fp = fp;
  p.fn = fn;
  p.precision = SafeDiv(static_cast<double>(tp), static_cast<double>(tp + fp));
  p.recall = SafeDiv(static_cast<double>(tp), static_cast<double>(tp + fn));
  p.f1 = SafeDiv(2.0 * p.precision * p.recall, p.precision + p.recall);
  return p;
}

StrictF1Report StrictF1(std::span<const std::vector<EntitySpan>> gold,
                        std::span<const std::vector<EntitySpan>> pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("strict F1: " + std::to_string(gold.size()) +
                          " gold sentences vs " + std::to_string(pred.size()) +
                          " predicted");
  }
  std::array<int64_t, kNumLabels> tp{}, fp{}, fn{};
  for (size_t i = 0; i < gold.size(); ++i) {
    std::map<SpanKey, int> unmatched;
    for (const EntitySpan &g : gold[i]) ++unmatched[KeyOf(g)];
    for (const EntitySpan &p : pred[i]) {
      auto it = unmatched.find(KeyOf(p));
      if (it != unmatched.end() && it->second > 0) {
        --it->second;
        ++tp[Index(p.label)];
      } else {
        ++fp[Index(p.label)];
      }
    }
    for (const auto &[key, count] : unmatched) fn[std::get<0>(key)] += count;
  }
  StrictF1Report report;
  int64_t all_tp = 0, all_fp = 0, all_fn = 0;
  for (int l = 0; l < kNumLabels; ++l) {
    report.per_label[l] = Prf::FromCounts(tp[l], fp[l], fn[l]);
    all_tp += tp[l];
    all_fp += fp[l];
    all_fn += fn[l];
  }
  report.overall = Prf::FromCounts(all_tp, all_fp, all_fn);
  return report;
}

double TokenAccuracy(std::span<const TagSequence> gold,
                     std::span<const TagSequence> pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("token accuracy: sentence count mismatch");
  }
  int64_t total = 0, correct = 0;
  for (size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw ValidationError("token accuracy: sentence " + std::to_string(i) +
                            " length mismatch");
    }
    for (size_t t = 0; t < gold[i].size(); ++t) {
      correct += gold[i][t] == pred[i][t];
    }
    total += static_cast<int64_t>(gold[i].size());
  }
  return SafeDiv(static_cast<double>(correct), static_cast<double>(total));
}

double CohensKappa(std::span<const int> a, std::span<const int> b, int n_classes) {
  if (a.size() != b.size()) throw ValidationError("kappa: length mismatch");
  if (a.empty()) throw ValidationError("kappa: empty input");
  std::vector<int64_t> ca(n_classes, 0), cb(n_classes, 0);
  int64_t agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= n_classes || b[i] < 0 || b[i] >= n_classes) {
      throw ValidationError("kappa: category out of range");
    }
    ++ca[a[i]];
    ++cb[b[i]];
    agree += a[i] == b[i];
  }
  const auto n = static_cast<double>(a.size());
  const double p_o = static_cast<double>(agree) / n;
  double p_e = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    p_e += (static_cast<double>(ca[c]) / n) * (static_cast<double>(cb[c]) / n);
  }
  if (p_e >= 1.0) {
    if (agree == static_cast<int64_t>(a.size())) return 1.0;
    throw ValidationError("kappa: degenerate marginals (chance agreement is 1)");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

double CohensKappa(std::span<const TagSequence> a, std::span<const TagSequence> b) {
  if (a.size() != b.size()) throw ValidationError("kappa: sentence count mismatch");
  std::vector<int> ca, cb;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) {
      throw ValidationError("kappa: sentence " + std::to_string(i) + " length mismatch");
    }
    for (size_t t = 0; t < a[i].size(); ++t) {
      ca.push_back(a[i][t].code());
      cb.push_back(b[i][t].code());
    }
  }
  return CohensKappa(ca, cb, Tag::kCount);
}

namespace {

struct Layer {
  std::vector<TagSequence> tags;
  std::vector<std::vector<EntitySpan>> spans;
};

// Maps every tag outside `label` to O; nullopt keeps all labels.
Layer Restrict(const std::vector<const Sentence *> &sentences,
               std::optional<EntityLabel> label) {
  Layer layer;
  for (const Sentence *s : sentences) {
    TagSequence tags = s->tags;
    if (label) {
      for (Tag &t : tags) {
        if (!t.is_outside() && t.label() != *label) t = Tag::Outside();
      }
    }
    layer.spans.push_back(DecodeIob(tags));
    layer.tags.push_back(std::move(tags));
  }
  return layer;
}

AgreementScores Score(const std::vector<const Sentence *> &a,
                      const std::vector<const Sentence *> &b,
                      std::optional<EntityLabel> label) {
  const Layer la = Restrict(a, label);
  const Layer lb = Restrict(b, label);
  AgreementScores s;
  s.kappa = CohensKappa(la.tags, lb.tags);
  s.f1 = StrictF1(la.spans, lb.spans).overall;
  return s;
}

}  // namespace

AgreementReport IaaReport(const Corpus &a, const Corpus &b) {
  if (a.size() != b.size()) {
    throw ValidationError("IAA: layers have different document counts");
  }
  std::vector<const Sentence *> sa, sb;
  std::array<std::vector<const Sentence *>, kNumRegions> ra, rb;
  for (size_t d = 0; d < a.size(); ++d) {
    const Document &da = a[d];
    const Document &db = b[d];
    if (da.id != db.id) {
      throw ValidationError("IAA: document id mismatch '" + da.id + "' vs '" +
                            db.id + "'");
    }
    if (da.sentences.size() != db.sentences.size()) {
      throw ValidationError("IAA: document " + da.id + " sentence count differs");
    }
    for (size_t i = 0; i < da.sentences.size(); ++i) {
      const Sentence &x = da.sentences[i];
      const Sentence &y = db.sentences[i];
      if (x.TokenTexts() != y.TokenTexts()) {
        throw ValidationError("IAA: document " + da.id + " sentence " +
                              std::to_string(i) + " tokenization differs");
      }
      sa.push_back(&x);
      sb.push_back(&y);
      ra[Index(da.region)].push_back(&x);
      rb[Index(da.region)].push_back(&y);
    }
  }
  AgreementReport report;
  report.overall = Score(sa, sb, std::nullopt);
  for (int r = 0; r < kNumRegions; ++r) {
    if (!ra[r].empty()) report.per_region[r] = Score(ra[r], rb[r], std::nullopt);
  }
  for (EntityLabel l : kAllLabels) report.per_label[Index(l)] = Score(sa, sb, l);
  return report;
}

}  // namespace histner
