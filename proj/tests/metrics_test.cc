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
#include <map>
#include <numeric>

#include "gtest/gtest.h"
#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/metrics.h"
#include "histner/rng.h"
#include "test_util.h"

namespace histner {
namespace {

using SpanSets = std::vector<std::vector<EntitySpan>>;

const Tag kO = Tag::Outside();
const Tag kBDate = Tag::Begin(EntityLabel::kDate);

// Span extraction written independently of DecodeIob: walk the tags and
// close the open span whenever the next tag does not continue it.
std::vector<std::tuple<int, size_t, size_t>> OracleSpans(const TagSequence &tags) {
  std::vector<std::tuple<int, size_t, size_t>> out;
  int open_label = -1;
  size_t open_start = 0;
  for (size_t i = 0; i <= tags.size(); ++i) {
    const bool end = i == tags.size();
    const int code = end ? 0 : tags[i].code();
    const int label = code == 0 ? -1 : (code - 1) / 2;
    const bool continues = !end && code != 0 && code % 2 == 0 && label == open_label;
    if (open_label >= 0 && !continues) {
      out.emplace_back(open_label, open_start, i - 1);
      open_label = -1;
    }
    if (!end && code != 0 && !continues) {
      open_label = label;
      open_start = i;
    }
  }
  return out;
}

double F1Of(int64_t tp, int64_t fp, int64_t fn) {
  const double p = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
  const double r = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
  return p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
}

TEST(PrfTest, ZeroConventions) {
  const Prf prf = Prf::FromCounts(0, 0, 0);
  EXPECT_EQ(prf.precision, 0.0);
  EXPECT_EQ(prf.recall, 0.0);
  EXPECT_EQ(prf.f1, 0.0);
  const Prf half = Prf::FromCounts(1, 1, 1);
  EXPECT_DOUBLE_EQ(half.f1, 0.5);
}

TEST(StrictF1Test, Identical) {
  const SpanSets gold = {{{EntityLabel::kPerson, 0, 1, ""}}, {{EntityLabel::kDate, 2, 2, ""}}};
  const StrictF1Report r = StrictF1(gold, gold);
  EXPECT_EQ(r.overall.precision, 1.0);
  EXPECT_EQ(r.overall.recall, 1.0);
  EXPECT_EQ(r.overall.f1, 1.0);
}

TEST(StrictF1Test, OneBoundaryOff) {
  const SpanSets gold = {{{EntityLabel::kPerson, 0, 1, ""}, {EntityLabel::kDate, 3, 4, ""}}};
  const SpanSets pred = {{{EntityLabel::kPerson, 0, 1, ""}, {EntityLabel::kDate, 3, 5, ""}}};
  const StrictF1Report r = StrictF1(gold, pred);
  EXPECT_EQ(r.overall.tp, 1);
  EXPECT_EQ(r.overall.fp, 1);
  EXPECT_EQ(r.overall.fn, 1);
  EXPECT_DOUBLE_EQ(r.overall.f1, 0.5);
}

TEST(StrictF1Test, BothEmpty) {
  const SpanSets none = {{}, {}};
  const StrictF1Report r = StrictF1(none, none);
  EXPECT_EQ(r.overall.f1, 0.0);
  EXPECT_EQ(r.overall.precision, 0.0);
}

TEST(StrictF1Test, WrongLabelIsFpAndFn) {
  const SpanSets gold = {{{EntityLabel::kPerson, 0, 1, ""}}};
  const SpanSets pred = {{{EntityLabel::kLocation, 0, 1, ""}}};
  const StrictF1Report r = StrictF1(gold, pred);
  EXPECT_EQ(r.per_label[Index(EntityLabel::kPerson)].fn, 1);
  EXPECT_EQ(r.per_label[Index(EntityLabel::kLocation)].fp, 1);
  EXPECT_EQ(r.overall.tp, 0);
}

TEST(StrictF1Test, LengthMismatch) {
  const SpanSets one = {{}};
  const SpanSets two = {{}, {}};
  EXPECT_THROW(StrictF1(one, two), Error);
}

TEST(StrictF1Test, MatchesBruteForceOracle) {
  Rng rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n_sent = 1 + rng.Below(3);
    SpanSets gold, pred;
    std::map<int, std::array<int64_t, 3>> counts;  // label -> tp, fp, fn
    for (size_t s = 0; s < n_sent; ++s) {
      const size_t n = rng.Below(13);
      const TagSequence g = RandomTags(rng, n), p = RandomTags(rng, n);
      gold.push_back(DecodeIob(g));
      pred.push_back(DecodeIob(p));
      auto gs = OracleSpans(g), ps = OracleSpans(p);
      for (const auto &span : ps) {
        const auto it = std::find(gs.begin(), gs.end(), span);
        if (it != gs.end()) {
          ++counts[std::get<0>(span)][0];
          gs.erase(it);
        } else {
          ++counts[std::get<0>(span)][1];
        }
      }
      for (const auto &span : gs) ++counts[std::get<0>(span)][2];
    }
    const StrictF1Report r = StrictF1(gold, pred);
    int64_t tp = 0, fp = 0, fn = 0;
    for (int l = 0; l < kNumLabels; ++l) {
      const auto c = counts[l];
      EXPECT_EQ(r.per_label[l].tp, c[0]);
      EXPECT_EQ(r.per_label[l].fp, c[1]);
      EXPECT_EQ(r.per_label[l].fn, c[2]);
      tp += c[0];
      fp += c[1];
      fn += c[2];
    }
    EXPECT_EQ(r.overall.tp, tp);
    EXPECT_EQ(r.overall.fp, fp);
    EXPECT_EQ(r.overall.fn, fn);
    EXPECT_DOUBLE_EQ(r.overall.f1, F1Of(tp, fp, fn));
  }
}

TEST(StrictF1Test, SwapAndReorderProperties) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    SpanSets gold, pred;
    for (int s = 0; s < 5; ++s) {
      const size_t n = rng.Below(10);
      gold.push_back(DecodeIob(RandomTags(rng, n)));
      pred.push_back(DecodeIob(RandomTags(rng, n)));
    }
    const StrictF1Report a = StrictF1(gold, pred);
    const StrictF1Report b = StrictF1(pred, gold);
    EXPECT_DOUBLE_EQ(a.overall.precision, b.overall.recall);
    EXPECT_DOUBLE_EQ(a.overall.recall, b.overall.precision);
    EXPECT_DOUBLE_EQ(a.overall.f1, b.overall.f1);
    std::reverse(gold.begin(), gold.end());
    std::reverse(pred.begin(), pred.end());
    EXPECT_EQ(StrictF1(gold, pred).overall.f1, a.overall.f1);
  }
}

TEST(TokenAccuracyTest, Examples) {
  const std::vector<TagSequence> a = {{kO, kO, kBDate}};
  const std::vector<TagSequence> b = {{kO, kBDate, kBDate}};
  EXPECT_DOUBLE_EQ(TokenAccuracy(a, a), 1.0);
  EXPECT_DOUBLE_EQ(TokenAccuracy(a, b), 2.0 / 3.0);
  const std::vector<TagSequence> c = {{kO, kO}};
  EXPECT_THROW(TokenAccuracy(a, c), Error);
}

TEST(TokenAccuracyTest, AllOutsideOnFivePercentEntities) {
  std::vector<TagSequence> gold, pred;
  for (int s = 0; s < 10; ++s) {
    TagSequence g(20, kO);
    g[s % 20] = kBDate;
    gold.push_back(g);
    pred.push_back(TagSequence(20, kO));
  }
  EXPECT_DOUBLE_EQ(TokenAccuracy(gold, pred), 0.95);
}

TEST(KappaTest, HandExample) {
  const std::vector<TagSequence> a = {{kO, kO, kBDate, kBDate}};
  const std::vector<TagSequence> b = {{kO, kBDate, kBDate, kBDate}};
  EXPECT_EQ(CohensKappa(a, b), 0.5);
}

TEST(KappaTest, IdenticalNonConstant) {
  const std::vector<TagSequence> a = {{kO, kBDate, Tag::Inside(EntityLabel::kDate), kO}};
  EXPECT_EQ(CohensKappa(a, a), 1.0);
}

TEST(KappaTest, DegenerateMarginals) {
  const std::vector<TagSequence> same = {{kO, kO, kO}};
  EXPECT_EQ(CohensKappa(same, same), 1.0);
  const std::vector<int> x = {0, 0}, y = {1, 1};
  // p_e = 0 here, so this one is defined.
  EXPECT_EQ(CohensKappa(x, y, 2), 0.0);
  EXPECT_THROW(CohensKappa(std::vector<int>{}, std::vector<int>{}, 2), Error);
}

TEST(KappaTest, IndependentSequencesNearZero) {
  Rng rng(43);
  double sum = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> a(10000), b(10000);
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.Bernoulli(0.7) ? 0 : static_cast<int>(rng.Below(Tag::kCount));
      b[i] = rng.Bernoulli(0.7) ? 0 : static_cast<int>(rng.Below(Tag::kCount));
    }
    sum += CohensKappa(a, b, Tag::kCount);
  }
  EXPECT_LT(std::abs(sum / 100), 0.05);
}

TEST(KappaTest, RelabelInvarianceAndUpperBound) {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a(50), b(50), perm(Tag::kCount);
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span<int>(perm));
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = static_cast<int>(rng.Below(4));
      b[i] = rng.Bernoulli(0.6) ? a[i] : static_cast<int>(rng.Below(4));
    }
    std::vector<int> pa(a.size()), pb(b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      pa[i] = perm[a[i]];
      pb[i] = perm[b[i]];
    }
    const double k = CohensKappa(a, b, Tag::kCount);
    EXPECT_NEAR(CohensKappa(pa, pb, Tag::kCount), k, 1e-12);
    EXPECT_LE(k, 1.0);
  }
}

// ---- agreement reports ----

Corpus AnnotatedCorpus(Rng &rng, int n_docs) {
  Corpus corpus;
  for (int d = 0; d < n_docs; ++d) {
    Document doc;
    doc.id = "doc" + std::to_string(d);
    doc.region = kAllRegions[d % kNumRegions];
    for (int s = 0; s < 5; ++s) {
      const size_t n = 4 + rng.Below(10);
      doc.sentences.push_back(MakeSentence(doc.id, s, doc.region,
                                           std::vector<std::string>(n, "w"),
                                           EncodeIob(RandomSpans(rng, n), n)));
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

// Re-annotates spans of `label`: each is dropped with probability `rate`.
Corpus Disagree(const Corpus &corpus, EntityLabel label, double rate, Rng &rng) {
  Corpus out = corpus;
  for (Document &doc : out) {
    for (Sentence &s : doc.sentences) {
      std::vector<EntitySpan> kept;
      for (const EntitySpan &span : s.spans) {
        if (span.label == label && rng.Bernoulli(rate)) continue;
        kept.push_back(span);
      }
      s = MakeSentence(s.doc_id, s.index, s.region, s.TokenTexts(),
                       EncodeIob(kept, s.tokens.size()));
    }
  }
  return out;
}

TEST(IaaTest, IdenticalLayers) {
  Rng rng(51);
  const Corpus a = AnnotatedCorpus(rng, 8);
  const AgreementReport r = IaaReport(a, a);
  EXPECT_EQ(r.overall.kappa, 1.0);
  EXPECT_EQ(r.overall.f1.f1, 1.0);
  for (Region reg : kAllRegions) {
    ASSERT_TRUE(r.per_region[Index(reg)]);
    EXPECT_EQ(r.per_region[Index(reg)]->kappa, 1.0);
    EXPECT_EQ(r.per_region[Index(reg)]->f1.f1, 1.0);
  }
  for (EntityLabel l : kAllLabels) {
    EXPECT_EQ(r.per_label[Index(l)].kappa, 1.0);
    EXPECT_EQ(r.per_label[Index(l)].f1.f1, 1.0);
  }
}

TEST(IaaTest, DisagreementConfinedToOneLabel) {
  Rng rng(52);
  const Corpus a = AnnotatedCorpus(rng, 12);
  const Corpus b = Disagree(a, EntityLabel::kProduct, 0.5, rng);
  const AgreementReport r = IaaReport(a, b);
  for (EntityLabel l : kAllLabels) {
    if (l == EntityLabel::kProduct) {
      EXPECT_LT(r.per_label[Index(l)].kappa, 1.0);
      EXPECT_LT(r.per_label[Index(l)].f1.f1, 1.0);
    } else {
      EXPECT_EQ(r.per_label[Index(l)].kappa, 1.0);
      EXPECT_EQ(r.per_label[Index(l)].f1.f1, 1.0);
    }
  }
}

// Dates agreed on far more often than products give the higher scores.
TEST(IaaTest, AgreementOrderingFollowsDisagreementRates) {
  Rng rng(53);
  const Corpus a = AnnotatedCorpus(rng, 40);
  Corpus b = Disagree(a, EntityLabel::kDate, 0.05, rng);
  b = Disagree(b, EntityLabel::kProduct, 0.8, rng);
  const AgreementReport r = IaaReport(a, b);
  EXPECT_GT(r.per_label[Index(EntityLabel::kDate)].kappa,
            r.per_label[Index(EntityLabel::kProduct)].kappa);
  EXPECT_GT(r.per_label[Index(EntityLabel::kDate)].f1.f1,
            r.per_label[Index(EntityLabel::kProduct)].f1.f1);
}

TEST(IaaTest, MismatchedDocumentsRejected) {
  Rng rng(54);
  const Corpus a = AnnotatedCorpus(rng, 3);
  Corpus b = a;
  b[1].id = "other";
  EXPECT_THROW(IaaReport(a, b), Error);
}

TEST(IaaTest, JsonKeys) {
  Rng rng(55);
  const Corpus a = AnnotatedCorpus(rng, 4);
  const auto j = ToJson(IaaReport(a, a));
  EXPECT_TRUE(j.contains("overall"));
  EXPECT_TRUE(j.contains("per_label"));
  EXPECT_TRUE(j.contains("per_region"));
}

}  // namespace
}  // namespace histner
