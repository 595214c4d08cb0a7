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


#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "histner/analysis.h"
#include "histner/corpus.h"
#include "histner/error.h"

namespace histner {
namespace {

Document Doc(const std::string &id, Region region,
             const std::vector<std::vector<std::string>> &sentences) {
  Document doc;
  doc.id = id;
  doc.region = region;
  for (const auto &tokens : sentences) {
    doc.sentences.push_back(MakeSentence(id, doc.sentences.size(), region, tokens,
                                         TagSequence(tokens.size(), Tag::Outside())));
  }
  return doc;
}

const TfIdfEntry *Find(const TfIdfResult &r, Region region, const std::string &term) {
  for (const TfIdfEntry &e : r.ranked[Index(region)]) {
    if (e.term == term) return &e;
  }
  return nullptr;
}

TEST(TfIdfTest, TwoRegionHandValue) {
  const Corpus corpus = {
      Doc("a", Region::kBessarabia, {{"abc", "si", "Abc"}, {"abc", "."}}),
      Doc("b", Region::kWallachia, {{"si", "ziar"}}),
  };
  const TfIdfResult r = TfIdfTopK(corpus, 10);
  const TfIdfEntry *abc = Find(r, Region::kBessarabia, "abc");
  ASSERT_NE(abc, nullptr);
  EXPECT_NEAR(abc->score, std::log(4.0) * std::log(2.0), 1e-12);
  EXPECT_EQ(r.ranked[Index(Region::kBessarabia)][0].term, "abc");
  // Shared by both region documents.
  EXPECT_EQ(Find(r, Region::kBessarabia, "si")->score, 0.0);
  EXPECT_EQ(Find(r, Region::kBessarabia, "."), nullptr);
  EXPECT_TRUE(r.ranked[Index(Region::kMoldavia)].empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(TfIdfTest, TermInEveryRegionScoresZero) {
  Corpus corpus;
  for (Region reg : kAllRegions) {
    corpus.push_back(Doc(std::string(RegionShortName(reg)), reg, {{"ziarul", "x"}}));
  }
  const TfIdfResult r = TfIdfTopK(corpus, 5);
  for (Region reg : kAllRegions) EXPECT_EQ(Find(r, reg, "ziarul")->score, 0.0);
}

TEST(TfIdfTest, RawTfSwitch) {
  const Corpus corpus = {Doc("a", Region::kBessarabia, {{"abc", "abc", "abc"}}),
                         Doc("b", Region::kWallachia, {{"x"}})};
  TfIdfOptions options;
  options.log_tf = false;
  const TfIdfResult r = TfIdfTopK(corpus, 1, options);
  EXPECT_NEAR(Find(r, Region::kBessarabia, "abc")->score, 3 * std::log(2.0), 1e-12);
}

TEST(TfIdfTest, Stopwords) {
  const Corpus corpus = {Doc("a", Region::kBessarabia, {{"si", "abc"}}),
                         Doc("b", Region::kWallachia, {{"x"}})};
  TfIdfOptions options;
  options.stopwords = {"si"};
  EXPECT_EQ(Find(TfIdfTopK(corpus, 5, options), Region::kBessarabia, "si"), nullptr);
}

TEST(TfIdfTest, Errors) {
  const Corpus corpus = {Doc("a", Region::kBessarabia, {{"abc"}})};
  EXPECT_THROW(TfIdfTopK(corpus, 0), ConfigError);
  const TfIdfResult r = TfIdfTopK(corpus, 3);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.ranked[0][0].score, 0.0);
}

TEST(TfIdfTest, TiesBrokenByTermAndDeterministic) {
  const Corpus corpus = {Doc("a", Region::kBessarabia, {{"zeta", "alfa", "mu"}}),
                         Doc("b", Region::kWallachia, {{"x"}})};
  const TfIdfResult r = TfIdfTopK(corpus, 3);
  const auto &ranked = r.ranked[Index(Region::kBessarabia)];
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0].term, "alfa");
  EXPECT_EQ(ranked[1].term, "mu");
  EXPECT_EQ(ranked[2].term, "zeta");
  std::stringstream a, b;
  WriteTfIdfTsv(r, a);
  WriteTfIdfTsv(TfIdfTopK(corpus, 3), b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "Bessarabia\t1\talfa\t" + [] {
              char buf[32];
              std::snprintf(buf, sizeof buf, "%.6f", std::log(2.0) * std::log(2.0));
              return std::string(buf);
            }());
}

// Duplicating a region's documents keeps the ranking and scores non-negative.
TEST(TfIdfTest, DuplicationPreservesRanking) {
  const Document bess = Doc("a", Region::kBessarabia,
                            {{"basarabia", "basarabia", "chisinau", "si"},
                             {"basarabia", "gubernia", "chisinau"}});
  const Corpus once = {bess, Doc("b", Region::kWallachia, {{"si", "bucuresti"}})};
  Document twice_doc = bess;
  for (const Sentence &s : bess.sentences) twice_doc.sentences.push_back(s);
  const Corpus twice = {twice_doc, once[1]};
  const auto r1 = TfIdfTopK(once, 10).ranked[0];
  const auto r2 = TfIdfTopK(twice, 10).ranked[0];
  ASSERT_EQ(r1.size(), r2.size());
  for (size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].term, r2[i].term);
    EXPECT_GE(r1[i].score, 0.0);
  }
  EXPECT_EQ(r1[0].term, "basarabia");
}

TEST(TfIdfTest, Lowercases) {
  const Corpus corpus = {Doc("a", Region::kBessarabia, {{"ȚARA", "Țara"}}),
                         Doc("b", Region::kWallachia, {{"x"}})};
  const TfIdfResult r = TfIdfTopK(corpus, 3);
  ASSERT_NE(Find(r, Region::kBessarabia, "țara"), nullptr);
  EXPECT_NEAR(Find(r, Region::kBessarabia, "țara")->score, std::log(3.0) * std::log(2.0),
              1e-12);
}

}  // namespace
}  // namespace histner
