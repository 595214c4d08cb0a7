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

#ifndef HISTNER_ANALYSIS_H_
#define HISTNER_ANALYSIS_H_

#include <array>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "histner/corpus.h"

namespace histner {

struct TfIdfEntry {
  std::string term;
  Region region = Region::kBessarabia;
  double score = 0.0;
};

struct TfIdfOptions {
  // log(1 + count) when true, raw count otherwise.
  bool log_tf = true;
  // Lowercased terms to drop; empty by default.
  std::set<std::string> stopwords;
};

struct TfIdfResult {
  // Indexed by region; empty for regions absent from the corpus.
  std::array<std::vector<TfIdfEntry>, kNumRegions> ranked;
  std::vector<std::string> warnings;
};

// Each region's sentences form one virtual document. Terms are tokens,
// lowercased, with pure-punctuation tokens removed. score = tf * idf with
// idf = log(N / df) over the N regions present. Ranking is score
// descending, then term ascending; at most k entries per region.
TfIdfResult TfIdfTopK(const Corpus &corpus, int k, const TfIdfOptions &options = {});

// "region TAB rank TAB term TAB score" with six decimals.
void WriteTfIdfTsv(const TfIdfResult &result, std::ostream &out);

}  // namespace histner

#endif  // HISTNER_ANALYSIS_H_
