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
#include <cstdio>
#include <map>
#include <ostream>

#include "histner/analysis.h"
#include "histner/error.h"
#include "histner/utf8.h"

namespace histner {

TfIdfResult TfIdfTopK(const Corpus &corpus, int k, const TfIdfOptions &options) {
  if (k <= 0) throw ConfigError("tfidf: k must be at least 1");
  std::array<std::map<std::string, int64_t>, kNumRegions> counts;
  std::array<bool, kNumRegions> present{};
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      present[Index(s.region)] = true;
      for (const Token &tok : s.tokens) {
        if (!utf8::HasWordChar(tok.text)) continue;
        std::string term = utf8::ToLower(tok.text);
        if (options.stopwords.count(term)) continue;
        ++counts[Index(s.region)][std::move(term)];
      }
    }
  }
  const auto n_docs = std::count(present.begin(), present.end(), true);
  TfIdfResult result;
  if (n_docs < 2) {
    result.warnings.push_back(
        "tfidf: corpus covers fewer than two regions; every idf is 0");
  }
  std::map<std::string, int> df;
  for (const auto &region_counts : counts) {
    for (const auto &[term, c] : region_counts) ++df[term];
  }
  for (Region r : kAllRegions) {
    if (!present[Index(r)]) continue;
    std::vector<TfIdfEntry> entries;
    for (const auto &[term, c] : counts[Index(r)]) {
      const double tf = options.log_tf ? std::log1p(static_cast<double>(c))
                                       : static_cast<double>(c);
      const double idf =
          std::log(static_cast<double>(n_docs) / static_cast<double>(df[term]));
      entries.push_back(TfIdfEntry{term, r, tf * idf});
    }
    std::sort(entries.begin(), entries.end(),
              [](const TfIdfEntry &a, const TfIdfEntry &b) {
                return a.score != b.score ? a.score > b.score : a.term < b.term;
              });
    if (entries.size() > static_cast<size_t>(k)) entries.resize(k);
    result.ranked[Index(r)] = std::move(entries);
  }
  return result;
}

void WriteTfIdfTsv(const TfIdfResult &result, std::ostream &out) {
  char score[64];
  for (Region r : kAllRegions) {
    const auto &entries = result.ranked[Index(r)];
    for (size_t i = 0; i < entries.size(); ++i) {
      std::snprintf(score, sizeof(score), "%.6f", entries[i].score);
      out << RegionName(r) << '\t' << i + 1 << '\t' << entries[i].term << '\t'
          << score << '\n';
    }
  }
}

}  // namespace histner
