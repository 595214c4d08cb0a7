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
#include <atomic>
#include <exception>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <thread>

#include "histner/error.h"
#include "histner/rng.h"
#include "histner/training.h"

namespace histner {

using nlohmann::ordered_json;

void TrainConfig::Validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch_size < 1) throw ConfigError("batch size must be at least 1");
  if (!(lr > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight decay must be >= 0");
  if (!(clip_norm > 0.0)) throw ConfigError("clip norm must be positive");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
}

ordered_json ToJson(const TrainConfig &c) {
  ordered_json j;
  j["mode"] = ModeName(c.mode);
  j["epochs"] = c.epochs;
  j["lr"] = c.lr;
  j["weight_decay"] = c.weight_decay;
  j["batch_size"] = c.batch_size;
  j["clip_norm"] = c.clip_norm;
  // Ignored by the baseline objective.
  j["lambda"] = c.lambda;
  j["seed"] = c.seed;
  j["baseline_fits_discriminator"] = c.baseline_fits_discriminator;
  return j;
}

TrainResult Train(std::span<const Sentence> train, std::span<const Sentence> valid,
                  const TaggerConfig &tagger, const TrainConfig &config) {
  config.Validate();
  tagger.Validate();
  if (train.empty()) throw ConfigError("train: empty training split");

  TaggerParams params = InitParams(tagger);
  OptimState state = OptimState::For(params);
  const LossOptions loss_options{config.mode == Mode::kBaseline &&
                                 config.baseline_fits_discriminator};

  // Featurize once; batches are assembled from cached ids.
  Batch all = MakeBatch(train, tagger.vocab_size);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng shuffle_rng(config.seed ^ 0x5DEECE66DULL);

  TrainResult result;
  double best_f1 = -1.0;
  const auto batch_size = static_cast<size_t>(config.batch_size);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.Shuffle(std::span<size_t>(order));
    double ner_sum = 0.0, domain_sum = 0.0, total_sum = 0.0;
    size_t token_sum = 0;
    for (size_t start = 0; start < order.size(); start += batch_size) {
      const size_t end = std::min(order.size(), start + batch_size);
      Batch batch;
      for (size_t k = start; k < end; ++k) {
        batch.ids.push_back(all.ids[order[k]]);
        batch.tags.push_back(all.tags[order[k]]);
        batch.domains.push_back(all.domains[order[k]]);
      }
      LossResult r = ComputeLosses(params, batch, config.mode, config.lambda, loss_options);
      const auto n_tok = static_cast<double>(batch.tokens());
      ner_sum += r.losses.ner_loss * n_tok;
      domain_sum += r.losses.domain_loss * n_tok;
      total_sum += r.losses.total * n_tok;
      token_sum += batch.tokens();

      // The discriminator is its own clipping group, so its gradient scale
      // never rescales the tagger update.
      std::vector<ad::Array *> tagger_group, discriminator_group;
      for (size_t i = 0; i < kNumParams; ++i) {
        (ParamBlock(i) == Block::kDiscriminator ? discriminator_group : tagger_group)
            .push_back(&r.grads[i]);
      }
      ClipGradients(tagger_group, config.clip_norm);
      ClipGradients(discriminator_group, config.clip_norm);
      AdamStep(params, r.grads, state, config.lr, config.weight_decay);
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.ner_loss = ner_sum / static_cast<double>(token_sum);
    rec.domain_loss = domain_sum / static_cast<double>(token_sum);
    rec.total_loss = total_sum / static_cast<double>(token_sum);
    if (!valid.empty()) {
      const EvalReport report = Evaluate(params, valid);
      rec.valid_f1 = report.overall.f1.f1;
      rec.valid_accuracy = report.overall.accuracy;
      rec.valid_domain_accuracy = report.domain_accuracy;
      if (rec.valid_f1 > best_f1) {
        best_f1 = rec.valid_f1;
        result.best = params;
        result.best_epoch = epoch;
      }
    }
    result.history.push_back(rec);
  }
  result.final = std::move(params);
  if (valid.empty()) result.best = result.final;
  return result;
}

ordered_json HistoryJson(const TrainResult &result) {
  ordered_json j;
  j["best_epoch"] = result.best_epoch;
  ordered_json epochs = ordered_json::array();
  for (const EpochRecord &r : result.history) {
    ordered_json e;
    e["epoch"] = r.epoch;
    e["ner_loss"] = r.ner_loss;
    e["domain_loss"] = r.domain_loss;
    e["total_loss"] = r.total_loss;
    e["valid_f1"] = r.valid_f1;
    e["valid_accuracy"] = r.valid_accuracy;
    e["valid_domain_accuracy"] = r.valid_domain_accuracy;
    epochs.push_back(std::move(e));
  }
  j["epochs"] = std::move(epochs);
  return j;
}

CrossRegionResult CrossRegion(const DatasetSplit &split, const TaggerConfig &tagger,
                              const TrainConfig &config, int jobs) {
  std::array<std::vector<Sentence>, kNumRegions> train, valid, eval;
  for (const Sentence &s : split.train) train[Index(s.region)].push_back(s);
  for (const Sentence &s : split.valid) valid[Index(s.region)].push_back(s);
  for (const Sentence &s : split.test) eval[Index(s.region)].push_back(s);
  for (Region r : kAllRegions) {
    if (train[Index(r)].empty()) {
      throw ConfigError("crossregion: region " + std::string(RegionName(r)) +
                        " has no training sentences");
    }
    if (eval[Index(r)].empty()) {
      throw ConfigError("crossregion: region " + std::string(RegionName(r)) +
                        " has no evaluation sentences");
    }
  }
  config.Validate();
  tagger.Validate();

  CrossRegionResult result;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(kNumRegions);
  auto worker = [&] {
    for (int r = next++; r < kNumRegions; r = next++) {
      try {
        const TrainResult trained = Train(train[r], valid[r], tagger, config);
        for (int e = 0; e < kNumRegions; ++e) {
          result.f1[r][e] = Evaluate(trained.best, eval[e]).overall.f1.f1;
        }
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(jobs, 1, kNumRegions);
  std::vector<std::thread> threads;
  for (int t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto &t : threads) t.join();
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

ordered_json ToJson(const CrossRegionResult &result) {
  ordered_json j;
  ordered_json regions = ordered_json::array();
  for (Region r : kAllRegions) regions.push_back(RegionName(r));
  j["regions"] = regions;
  ordered_json rows = ordered_json::array();
  for (const auto &row : result.f1) rows.push_back(row);
  j["f1"] = rows;
  return j;
}

void PrintCrossRegion(const CrossRegionResult &result, std::ostream &out) {
  char buf[64];
  out << "train \\ eval  ";
  for (Region r : kAllRegions) {
    std::snprintf(buf, sizeof(buf), "%-10s", std::string(RegionShortName(r)).c_str());
    out << buf;
  }
  out << '\n';
  for (Region tr : kAllRegions) {
    std::snprintf(buf, sizeof(buf), "%-14s", std::string(RegionShortName(tr)).c_str());
    out << buf;
    for (Region ev : kAllRegions) {
      std::snprintf(buf, sizeof(buf), "%-10.2f", 100.0 * result.f1[Index(tr)][Index(ev)]);
      out << buf;
    }
    out << '\n';
  }
}

void ExportEmbeddings(const TaggerParams &params, std::span<const Sentence> subset,
                      std::ostream &out) {
  char buf[48];
  for (const Sentence &s : subset) {
    const ForwardOutput f = Forward(params, Featurize(s, params.config.vocab_size));
    const ad::Array &h = f.features;
    out << RegionName(s.region);
    for (size_t j = 0; j < h.cols(); ++j) {
      double sum = 0.0;
      for (size_t i = 0; i < h.rows(); ++i) sum += h.at(i, j);
      std::snprintf(buf, sizeof(buf), "\t%.6f", sum / static_cast<double>(h.rows()));
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw Error("export_embeddings: write failed");
}

}  // namespace histner
