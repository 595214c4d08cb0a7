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
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "histner/error.h"
#include "histner/model.h"
#include "histner/rng.h"
#include "histner/synthetic.h"
#include "histner/training.h"
#include "test_util.h"

namespace histner {
namespace {

TaggerConfig Small(uint64_t seed = 1) {
  TaggerConfig c;
  c.vocab_size = 211;
  c.embed_dim = 6;
  c.hidden_dim = 8;
  c.context_window = 1;
  c.seed = seed;
  return c;
}

Batch RandomBatch(Rng &rng, size_t vocab) {
  Batch b;
  const size_t n = 1 + rng.Below(4);
  for (size_t s = 0; s < n; ++s) {
    const size_t len = 1 + rng.Below(6);
    std::vector<int> ids, tags;
    for (size_t i = 0; i < len; ++i) {
      ids.push_back(static_cast<int>(rng.Below(vocab)));
      tags.push_back(static_cast<int>(rng.Below(Tag::kCount)));
    }
    b.ids.push_back(ids);
    b.tags.push_back(tags);
    b.domains.push_back(static_cast<int>(rng.Below(kNumRegions)));
  }
  return b;
}

bool IsTagger(size_t k) { return ParamBlock(k) != Block::kDiscriminator; }

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.lambda = -0.1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.clip_norm = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseMode("loss_rev"), Mode::kLossRev);
  EXPECT_EQ(ParseMode("reverse"), std::nullopt);
}

TEST(LossTest, BaselineReportsNerLossOnly) {
  Rng rng(1);
  const TaggerParams p = InitParams(Small());
  const Batch b = RandomBatch(rng, 211);
  const LossResult r = ComputeLosses(p, b, Mode::kBaseline, 0.1);
  EXPECT_EQ(r.losses.total, r.losses.ner_loss);
  for (size_t k : {kDomainWeight, kDomainBias}) {
    for (double v : r.grads[k].data()) EXPECT_EQ(v, 0.0);
  }
  const LossResult fit = ComputeLosses(p, b, Mode::kBaseline, 0.1, {.fit_discriminator = true});
  for (size_t k = 0; k < kNumParams; ++k) {
    if (IsTagger(k)) {
      EXPECT_EQ(fit.grads[k], r.grads[k]);
    }
  }
}

TEST(LossTest, ReportedTotals) {
  Rng rng(2);
  const TaggerParams p = InitParams(Small());
  const Batch b = RandomBatch(rng, 211);
  const LossResult g = ComputeLosses(p, b, Mode::kGradRev, 0.1);
  EXPECT_DOUBLE_EQ(g.losses.total, g.losses.ner_loss + g.losses.domain_loss);
  const LossResult l = ComputeLosses(p, b, Mode::kLossRev, 0.1);
  EXPECT_DOUBLE_EQ(l.losses.total, l.losses.ner_loss - 0.1 * l.losses.domain_loss);
}

TEST(LossTest, ZeroLambdaMatchesBaselineExactly) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const TaggerParams p = InitParams(Small(trial));
    const Batch b = RandomBatch(rng, 211);
    const LossResult base = ComputeLosses(p, b, Mode::kBaseline, 0.0);
    const LossResult lr = ComputeLosses(p, b, Mode::kLossRev, 0.0);
    const LossResult gr = ComputeLosses(p, b, Mode::kGradRev, 0.0);
    EXPECT_EQ(lr.losses.total, lr.losses.ner_loss);
    EXPECT_EQ(lr.losses.ner_loss, base.losses.ner_loss);
    for (size_t k = 0; k < kNumParams; ++k) {
      if (!IsTagger(k)) continue;
      EXPECT_EQ(lr.grads[k], base.grads[k]) << ParamName(k);
      EXPECT_EQ(gr.grads[k], base.grads[k]) << ParamName(k);
    }
  }
}

double RelErr(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8});
}

TEST(LossTest, ModeEquivalence) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const TaggerParams p = InitParams(Small(100 + trial));
    const Batch b = RandomBatch(rng, 211);
    const double lambda = rng.Uniform(0.0, 2.0);
    const LossResult g = ComputeLosses(p, b, Mode::kGradRev, lambda);
    const LossResult l = ComputeLosses(p, b, Mode::kLossRev, lambda);
    for (size_t k = 0; k < kNumParams; ++k) {
      for (size_t i = 0; i < g.grads[k].size(); ++i) {
        const double expected = IsTagger(k) ? g.grads[k][i] : -lambda * g.grads[k][i];
        EXPECT_LE(RelErr(l.grads[k][i], expected), 1e-12) << ParamName(k) << " " << i;
        if (!IsTagger(k) && g.grads[k][i] != 0.0 && lambda > 0.0) {
          EXPECT_LT(l.grads[k][i] * g.grads[k][i], 0.0);
        }
      }
    }
  }
}

TEST(LossTest, EmptyBatchRejected) {
  const TaggerParams p = InitParams(Small());
  EXPECT_THROW(ComputeLosses(p, Batch{}, Mode::kBaseline, 0.1), Error);
}

TEST(LossTest, NonFiniteLossAborts) {
  TaggerParams p = InitParams(Small());
  p.values[kNerBias][0] = std::numeric_limits<double>::quiet_NaN();
  Rng rng(5);
  EXPECT_THROW(ComputeLosses(p, RandomBatch(rng, 211), Mode::kBaseline, 0.1), NumericError);
}

double Norm(const std::vector<ad::Array> &g) {
  double s = 0.0;
  for (const auto &a : g) {
    for (double v : a.data()) s += v * v;
  }
  return std::sqrt(s);
}

std::vector<ad::Array *> Pointers(std::vector<ad::Array> &g) {
  std::vector<ad::Array *> out;
  for (auto &a : g) out.push_back(&a);
  return out;
}

TEST(ClipTest, Examples) {
  std::vector<ad::Array> g = {ad::Array({2}, {0.6, 0.0}), ad::Array({1}, {0.8})};
  const auto before = g;
  EXPECT_DOUBLE_EQ(ClipGradients(Pointers(g), 2.0), 1.0);
  EXPECT_EQ(g, before);

  std::vector<ad::Array> h = {ad::Array({2}, {2.4, 0.0}), ad::Array({1}, {3.2})};
  EXPECT_DOUBLE_EQ(ClipGradients(Pointers(h), 2.0), 4.0);
  EXPECT_DOUBLE_EQ(h[0][0], 1.2);
  EXPECT_DOUBLE_EQ(h[1][0], 1.6);
}

TEST(ClipTest, NormAndDirection) {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ad::Array> g = {ad::Array({3}), ad::Array({2, 2})};
    const double scale = rng.Uniform(0.0, 5.0);
    for (auto &a : g) {
      for (double &v : a.data()) v = rng.Uniform(-scale, scale);
    }
    const auto orig = g;
    const double max_norm = rng.Uniform(0.1, 3.0);
    const double norm = ClipGradients(Pointers(g), max_norm);
    EXPECT_NEAR(Norm(g), std::min(norm, max_norm), 1e-12);
    double dot = 0.0;
    for (size_t k = 0; k < g.size(); ++k) {
      for (size_t i = 0; i < g[k].size(); ++i) dot += g[k][i] * orig[k][i];
    }
    if (norm > 0) {
      EXPECT_NEAR(dot / (Norm(g) * Norm(orig)), 1.0, 1e-12);
    }
  }
}

TEST(AdamTest, ZeroGradientNoDecay) {
  std::vector<ad::Array> params = {ad::Array({2}, {0.5, -1.0})};
  const std::vector<ad::Array> grads = {ad::Array({2})};
  OptimState state;
  state.m[0] = ad::Array({2});
  state.v[0] = ad::Array({2});
  AdamStep(params, grads, state, 0.1, 0.0);
  EXPECT_EQ(params[0], ad::Array({2}, {0.5, -1.0}));
  EXPECT_EQ(state.step, 1);
}

TEST(AdamTest, FirstStepIsSignTimesLr) {
  for (double g : {3.0, -0.02, 1e-3}) {
    std::vector<ad::Array> params = {ad::Array({1}, {1.0})};
    OptimState state;
    state.m[0] = ad::Array({1});
    state.v[0] = ad::Array({1});
    AdamStep(params, std::vector<ad::Array>{ad::Array({1}, {g})}, state, 0.01, 0.0);
    EXPECT_NEAR(params[0][0] - 1.0, -0.01 * (g > 0 ? 1 : -1), 1e-6);
  }
}

TEST(AdamTest, DecoupledDecay) {
  std::vector<ad::Array> params = {ad::Array({1}, {2.0})};
  OptimState state;
  state.m[0] = ad::Array({1});
  state.v[0] = ad::Array({1});
  for (int step = 1; step <= 3; ++step) {
    AdamStep(params, std::vector<ad::Array>{ad::Array({1})}, state, 0.1, 0.01);
    EXPECT_NEAR(params[0][0], 2.0 * std::pow(0.999, step), 1e-15);
  }
}

// ---- training ----

TrainConfig Quick(Mode mode, int epochs = 2) {
  TrainConfig c;
  c.mode = mode;
  c.epochs = epochs;
  c.batch_size = 8;
  c.seed = 3;
  return c;
}

TEST(TrainTest, DeterministicHistory) {
  const Corpus corpus = synthetic::Separable(60, 1);
  const DatasetSplit split = SplitDataset(corpus, {});
  for (Mode m : {Mode::kBaseline, Mode::kGradRev, Mode::kLossRev}) {
    const TrainResult a = Train(split.train, split.valid, Small(), Quick(m));
    const TrainResult b = Train(split.train, split.valid, Small(), Quick(m));
    EXPECT_EQ(HistoryJson(a).dump(), HistoryJson(b).dump());
    for (size_t k = 0; k < kNumParams; ++k) EXPECT_EQ(a.final.values[k], b.final.values[k]);
  }
}

TEST(TrainTest, ZeroLambdaModesUpdateTaggerIdentically) {
  const Corpus corpus = synthetic::Separable(60, 2);
  const DatasetSplit split = SplitDataset(corpus, {});
  std::vector<TrainResult> runs;
  for (Mode m : {Mode::kBaseline, Mode::kGradRev, Mode::kLossRev}) {
    TrainConfig c = Quick(m, 3);
    c.lambda = 0.0;
    runs.push_back(Train(split.train, split.valid, Small(), c));
  }
  for (size_t k = 0; k < kNumParams; ++k) {
    if (!IsTagger(k)) continue;
    EXPECT_EQ(runs[0].final.values[k], runs[1].final.values[k]) << ParamName(k);
    EXPECT_EQ(runs[0].final.values[k], runs[2].final.values[k]) << ParamName(k);
  }
}

TEST(TrainTest, InvalidConfigFailsBeforeTraining) {
  const Corpus corpus = synthetic::Separable(20, 3);
  const DatasetSplit split = SplitDataset(corpus, {});
  TrainConfig c = Quick(Mode::kBaseline);
  c.clip_norm = -1.0;
  EXPECT_THROW(Train(split.train, split.valid, Small(), c), ConfigError);
  EXPECT_THROW(Train({}, split.valid, Small(), Quick(Mode::kBaseline)), Error);
}

TEST(TrainTest, SeparableCorpusReachesPerfectF1) {
  const Corpus corpus = synthetic::Separable(200, 4);
  const DatasetSplit split = SplitDataset(corpus, {});
  TrainConfig c;
  c.seed = 4;
  c.lr = 1e-2;
  TaggerConfig t;
  t.seed = 4;
  const TrainResult r = Train(split.train, split.valid, t, c);
  ASSERT_EQ(r.history.size(), 15u);
  double best = 0.0;
  for (const EpochRecord &e : r.history) best = std::max(best, e.valid_f1);
  EXPECT_EQ(best, 1.0);
  EXPECT_EQ(r.history[r.best_epoch - 1].valid_f1, best);
  for (int e = 0; e + 1 < r.best_epoch; ++e) EXPECT_LT(r.history[e].valid_f1, best);
}

// ---- evaluation ----

TEST(EvaluateTest, PerfectAndAllOutside) {
  const Corpus corpus = synthetic::Separable(40, 5);
  const std::vector<Sentence> sentences = Flatten(corpus);
  std::vector<TagSequence> gold, none;
  size_t outside = 0, total = 0;
  for (const Sentence &s : sentences) {
    gold.push_back(s.tags);
    none.push_back(TagSequence(s.tags.size(), Tag::Outside()));
    total += s.tags.size();
    outside += std::count(s.tags.begin(), s.tags.end(), Tag::Outside());
  }
  const EvalReport perfect = ScorePredictions(sentences, gold);
  EXPECT_EQ(perfect.overall.f1.f1, 1.0);
  EXPECT_EQ(perfect.overall.accuracy, 1.0);
  for (Region r : kAllRegions) EXPECT_EQ(perfect.per_region[Index(r)]->f1.f1, 1.0);
  const EvalReport blank = ScorePredictions(sentences, none);
  EXPECT_EQ(blank.overall.f1.f1, 0.0);
  EXPECT_DOUBLE_EQ(blank.overall.accuracy, static_cast<double>(outside) / total);
  EXPECT_THROW(Evaluate(InitParams(Small()), std::vector<Sentence>{}), Error);
}

TEST(EvaluateTest, ReportLayout) {
  const std::vector<Sentence> sentences = Flatten(synthetic::Separable(20, 6));
  std::ostringstream out;
  PrintEvalReport(Evaluate(InitParams(Small()), sentences), out);
  const std::string text = out.str();
  size_t pos = 0;
  for (const char *col : {"Bess.", "Mold.", "Trans.", "Wall.", "Total"}) {
    const size_t at = text.find(col, pos);
    ASSERT_NE(at, std::string::npos) << col;
    pos = at;
  }
  EXPECT_NE(text.find("Acc"), std::string::npos);
  EXPECT_NE(text.find("F1"), std::string::npos);
  for (EntityLabel l : kAllLabels) EXPECT_NE(text.find(LabelName(l)), std::string::npos);
  const auto j = ToJson(Evaluate(InitParams(Small()), sentences));
  EXPECT_TRUE(j.contains("overall"));
  EXPECT_TRUE(j.contains("per_region"));
  EXPECT_TRUE(j.contains("per_label"));
}

// ---- inter-regional ----

TEST(CrossRegionTest, StructureAndJobsAgree) {
  const Corpus corpus = synthetic::SharedGenerator(30, 7);
  const DatasetSplit split = SplitDataset(corpus, {});
  const CrossRegionResult one = CrossRegion(split, Small(), Quick(Mode::kBaseline, 1), 1);
  const CrossRegionResult four = CrossRegion(split, Small(), Quick(Mode::kBaseline, 1), 4);
  EXPECT_EQ(one.f1, four.f1);
  const auto j = ToJson(one);
  EXPECT_EQ(j.at("f1").size(), 4u);
  std::ostringstream out;
  PrintCrossRegion(one, out);
  for (Region r : kAllRegions) {
    EXPECT_NE(out.str().find(RegionShortName(r)), std::string::npos);
  }
}

TEST(CrossRegionTest, EmptyRegionNamed) {
  Corpus corpus = synthetic::SharedGenerator(30, 8);
  std::erase_if(corpus, [](const Document &d) { return d.region == Region::kWallachia; });
  const DatasetSplit split = SplitDataset(corpus, {});
  try {
    CrossRegion(split, Small(), Quick(Mode::kBaseline, 1));
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("Wallachia"), std::string::npos) << e.what();
  }
}

// ---- embeddings ----

TEST(EmbeddingsTest, RowsAndColumns) {
  std::vector<Sentence> sentences = Flatten(synthetic::Separable(10, 9));
  sentences.push_back(sentences.front());
  const TaggerParams p = InitParams(Small());
  std::ostringstream out;
  ExportEmbeddings(p, sentences, out);
  std::istringstream in(out.str());
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), sentences.size());
  EXPECT_EQ(std::count(rows[0].begin(), rows[0].end(), '\t'), 8);
  EXPECT_EQ(rows.front(), rows.back());
  EXPECT_EQ(rows[0].substr(0, rows[0].find('\t')), RegionName(sentences[0].region));
}

}  // namespace
}  // namespace histner
