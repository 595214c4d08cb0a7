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

#ifndef HISTNER_TRAINING_H_
#define HISTNER_TRAINING_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "histner/corpus.h"
#include "histner/metrics.h"
#include "histner/model.h"

namespace histner {

// How the domain discriminator loss enters training.
//   kBaseline  NER loss only.
//   kGradRev   L_y + L_d, with the discriminator reading ScaleGradient(h, -lambda):
//              D learns normally, F receives -lambda * dL_d/dF.
//   kLossRev   L_y - lambda * L_d as one scalar: every block, D included,
//              sees the sign-flipped, lambda-scaled domain gradient.
enum class Mode : uint8_t { kBaseline, kGradRev, kLossRev };
std::string_view ModeName(Mode m);
std::optional<Mode> ParseMode(std::string_view s);

struct TrainConfig {
  Mode mode = Mode::kBaseline;
  int epochs = 15;
  double lr = 1e-3;
  double weight_decay = 0.01;
  int batch_size = 32;
  double clip_norm = 2.0;
  double lambda = 0.1;
  uint64_t seed = 0;
  // In baseline mode, fit the discriminator on detached features so that its
  // accuracy can be compared with the adversarial modes. Has no effect on
  // the feature extractor or the NER head.
  bool baseline_fits_discriminator = true;

  // Throws ConfigError.
  void Validate() const;
};

nlohmann::ordered_json ToJson(const TrainConfig &config);

struct LossBreakdown {
  double ner_loss = 0.0;     // L_y, mean over batch tokens
  double domain_loss = 0.0;  // L_d, mean over batch tokens
  double total = 0.0;        // L_y | L_y + L_d | L_y - lambda L_d
};

using Gradients = std::array<ad::Array, kNumParams>;

struct LossResult {
  LossBreakdown losses;
  Gradients grads;
};

// A minibatch prepared for the tagger. Each sentence supervises the
// discriminator at every token with its region.
struct Batch {
  std::vector<std::vector<int>> ids;
  std::vector<std::vector<int>> tags;
  std::vector<int> domains;
  size_t tokens() const;
};

Batch MakeBatch(std::span<const Sentence *const> sentences, size_t vocab_size);
Batch MakeBatch(std::span<const Sentence> sentences, size_t vocab_size);

struct LossOptions {
  // Baseline only: also return dL_d/d(theta_D) on detached features.
  bool fit_discriminator = false;
};

// Forward + backward for one batch. Throws NumericError on a non-finite loss.
LossResult ComputeLosses(const TaggerParams &params, const Batch &batch, Mode mode,
                         double lambda, const LossOptions &options = {});

// Scales every array by max_norm / g when the joint L2 norm g exceeds
// max_norm. Returns g.
double ClipGradients(std::span<ad::Array *const> grads, double max_norm);

struct OptimState {
  std::array<ad::Array, kNumParams> m;
  std::array<ad::Array, kNumParams> v;
  int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static OptimState For(const TaggerParams &params);
};

// Decoupled weight decay (theta -= lr * wd * theta) then a bias-corrected
// Adam update.
void AdamStep(std::span<ad::Array> params, std::span<const ad::Array> grads,
              OptimState &state, double lr, double weight_decay);
void AdamStep(TaggerParams &params, const Gradients &grads, OptimState &state,
              double lr, double weight_decay);

// ---- evaluation -----------------------------------------------------------------

struct RegionScores {
  int64_t sentences = 0;
  double accuracy = 0.0;
  Prf f1;
};

struct EvalReport {
  RegionScores overall;
  std::array<std::optional<RegionScores>, kNumRegions> per_region;
  std::array<Prf, kNumLabels> per_label;
  // Per-token argmax accuracy of the discriminator against the region.
  double domain_accuracy = 0.0;
};

// Scores predicted tag sequences against gold sentences; predictions are
// decoded with stray-I repair.
EvalReport ScorePredictions(std::span<const Sentence> gold,
                            std::span<const TagSequence> predicted);
// Runs the tagger over `subset`. Throws on an empty subset.
EvalReport Evaluate(const TaggerParams &params, std::span<const Sentence> subset);

nlohmann::ordered_json ToJson(const EvalReport &report);
// Region block ({Bess., Mold., Trans., Wall., Total} x {Acc, F1}) followed by
// the per-entity F1 row.
void PrintEvalReport(const EvalReport &report, std::ostream &out);

// ---- training -------------------------------------------------------------------

struct EpochRecord {
  int epoch = 0;
  double ner_loss = 0.0;
  double domain_loss = 0.0;
  double total_loss = 0.0;
  double valid_f1 = 0.0;
  double valid_accuracy = 0.0;
  double valid_domain_accuracy = 0.0;
};

struct TrainResult {
  TaggerParams best;   // best validation strict F1, earliest epoch on ties
  TaggerParams final;
  int best_epoch = 0;  // 1-based; 0 when there was no validation data
  std::vector<EpochRecord> history;
};

// Deterministic in (data, tagger config, train config). An empty `valid`
// makes best == final.
TrainResult Train(std::span<const Sentence> train, std::span<const Sentence> valid,
                  const TaggerConfig &tagger, const TrainConfig &config);

nlohmann::ordered_json HistoryJson(const TrainResult &result);

// ---- cross-region ---------------------------------------------------------------

struct CrossRegionResult {
  // [train region][eval region] strict F1.
  std::array<std::array<double, kNumRegions>, kNumRegions> f1{};
};

// Trains one model per region on that region's training sentences (model
// selection on its validation sentences) and scores it on each region's
// evaluation sentences. Regions are trained on up to `jobs` threads.
CrossRegionResult CrossRegion(const DatasetSplit &split, const TaggerConfig &tagger,
                              const TrainConfig &config, int jobs = 1);

nlohmann::ordered_json ToJson(const CrossRegionResult &result);
void PrintCrossRegion(const CrossRegionResult &result, std::ostream &out);

// ---- embeddings -----------------------------------------------------------------

// One line per sentence: region name, then the mean feature vector over the
// sentence's tokens, tab separated, six decimals.
void ExportEmbeddings(const TaggerParams &params, std::span<const Sentence> subset,
                      std::ostream &out);

}  // namespace histner

#endif  // HISTNER_TRAINING_H_
