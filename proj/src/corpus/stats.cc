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

#include <cstdio>
#include <ostream>

#include "histner/corpus.h"

namespace histner {

double EntityCounts::TokensPerEntity() const {
  return entities == 0 ? 0.0
                       : static_cast<double>(tokens) / static_cast<double>(entities);
}

EntityCounts CorpusStatistics::LabelTotal(EntityLabel l) const {
  EntityCounts out;
  for (const auto &c : cells[Index(l)]) {
    out.tokens += c.tokens;
    out.entities += c.entities;
  }
  return out;
}

EntityCounts CorpusStatistics::RegionTotal(Region r) const {
  EntityCounts out;
  for (const auto &row : cells) {
    out.tokens += row[Index(r)].tokens;
    out.entities += row[Index(r)].entities;
  }
  return out;
}

EntityCounts CorpusStatistics::Total() const {
  EntityCounts out;
  for (EntityLabel l : kAllLabels) {
    const EntityCounts c = LabelTotal(l);
    out.tokens += c.tokens;
    out.entities += c.entities;
  }
  return out;
}

CorpusStatistics ComputeStatistics(std::span<const Sentence> sentences) {
  CorpusStatistics stats;
  for (const Sentence &s : sentences) {
    const int r = Index(s.region);
    ++stats.sentences;
    ++stats.region_sentences[r];
    stats.tokens += static_cast<int64_t>(s.tokens.size());
    stats.region_tokens[r] += static_cast<int64_t>(s.tokens.size());
    for (const EntitySpan &span : s.spans) {
      EntityCounts &cell = stats.cells[Index(span.label)][r];
      ++cell.entities;
      cell.tokens += static_cast<int64_t>(span.last - span.first + 1);
    }
  }
  return stats;
}

CorpusStatistics ComputeStatistics(const Corpus &corpus) {
  const std::vector<Sentence> all = Flatten(corpus);
  return ComputeStatistics(all);
}

void PrintStatistics(const CorpusStatistics &stats, std::ostream &out) {
  char buf[160];
  auto row = [&](std::string_view label, std::string_view region,
                 const EntityCounts &c) {
    std::snprintf(buf, sizeof(buf), "%-14.*s %-14.*s %10lld %10lld %10.2f\n",
                  static_cast<int>(label.size()), label.data(),
                  static_cast<int>(region.size()), region.data(),
                  static_cast<long long>(c.tokens),
                  static_cast<long long>(c.entities), c.TokensPerEntity());
    out << buf;
  };
  std::snprintf(buf, sizeof(buf), "%-14s %-14s %10s %10s %10s\n", "Entity",
                "Region", "Tokens", "Entities", "Tok/Ent");
  out << buf;
  for (EntityLabel l : kAllLabels) {
    for (Region r : kAllRegions) {
      row(LabelName(l), RegionName(r), stats.cells[Index(l)][Index(r)]);
    }
    row(LabelName(l), "Total", stats.LabelTotal(l));
  }
  row("Total", "-", stats.Total());
  out << '\n';
  std::snprintf(buf, sizeof(buf), "%-14s %10s %10s\n", "Region", "Sentences",
                "Tokens");
  out << buf;
  for (Region r : kAllRegions) {
    const std::string_view name = RegionName(r);
    std::snprintf(buf, sizeof(buf), "%-14.*s %10lld %10lld\n",
                  static_cast<int>(name.size()), name.data(),
                  static_cast<long long>(stats.region_sentences[Index(r)]),
                  static_cast<long long>(stats.region_tokens[Index(r)]));
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "%-14s %10lld %10lld\n", "Total",
                static_cast<long long>(stats.sentences),
                static_cast<long long>(stats.tokens));
  out << buf;
}

}  // namespace histner
