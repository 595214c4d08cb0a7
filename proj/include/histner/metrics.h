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

#ifndef HISTNER_METRICS_H_
#define HISTNER_METRICS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "histner/corpus.h"

namespace histner {

// Precision/recall/F1 with every 0/0 taken as 0.
struct Prf {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static Prf FromCounts(int64_t tp, int64_t fp, int64_t fn);
};

struct StrictF1Report {
  Prf overall;  // micro-averaged
  std::array<Prf, kNumLabels> per_label;
};

// Strict entity matching: a prediction is a true positive only when an
// unmatched gold span has the same label and the same first/last token.
// Sentences are aligned by position.
StrictF1Report StrictF1(std::span<const std::vector<EntitySpan>> gold,
                        std::span<const std::vector<EntitySpan>> pred);

// Fraction of positions with identical tags, O included.
double TokenAccuracy(std::span<const TagSequence> gold,
                     std::span<const TagSequence> pred);

// Cohen's kappa over paired category codes in [0, n_classes).
double CohensKappa(std::span<const int> a, std::span<const int> b, int n_classes);
// Token-level kappa over the 11-tag alphabet, sequences concatenated.
double CohensKappa(std::span<const TagSequence> a, std::span<const TagSequence> b);

struct AgreementScores {
  double kappa = 0.0;
  Prf f1;  // annotator A as reference
};

struct AgreementReport {
  AgreementScores overall;
  // nullopt for regions that do not occur in the documents.
  std::array<std::optional<AgreementScores>, kNumRegions> per_region;
  // Both layers restricted to one label (other labels become O).
  std::array<AgreementScores, kNumLabels> per_label;
};

// Compares two annotation layers of the same documents and tokens.
AgreementReport IaaReport(const Corpus &a, const Corpus &b);

nlohmann::ordered_json ToJson(const Prf &prf);
nlohmann::ordered_json ToJson(const StrictF1Report &report);
nlohmann::ordered_json ToJson(const AgreementReport &report);
void PrintAgreement(const AgreementReport &report, std::ostream &out);

}  // namespace histner

#endif  // HISTNER_METRICS_H_
