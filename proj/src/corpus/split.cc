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
#include <istream>
#include <ostream>

#include <json.hpp>

#include "histner/corpus.h"
#include "histner/error.h"
#include "histner/rng.h"

namespace histner {

namespace {

constexpr int kSubsets = 3;

using Table = std::array<std::array<int64_t, kSubsets>, kNumRegions>;

// Rounds the region x subset quota table n_r * size_c / N to integers so
// that row sums equal region sizes, column sums equal subset sizes and every
// cell is the floor or the ceiling of its quota. Such a rounding always
// exists for two-way tables; the table is small enough to search.
Table RoundQuotas(const std::array<int64_t, kNumRegions> &rows,
                  const std::array<int64_t, kSubsets> &cols, int64_t total) {
  Table floor{};
  struct Cell {
    int r, c;
    int64_t frac;  // numerator over `total`
  };
  std::vector<Cell> frac_cells;
  for (int r = 0; r < kNumRegions; ++r) {
    for (int c = 0; c < kSubsets; ++c) {
      const int64_t num = rows[r] * cols[c];
      floor[r][c] = num / total;
      if (num % total != 0) frac_cells.push_back({r, c, num % total});
    }
  }
  std::array<int64_t, kNumRegions> row_need{};
  std::array<int64_t, kSubsets> col_need{};
  for (int r = 0; r < kNumRegions; ++r) {
    row_need[r] = rows[r];
    for (int c = 0; c < kSubsets; ++c) row_need[r] -= floor[r][c];
  }
  for (int c = 0; c < kSubsets; ++c) {
    col_need[c] = cols[c];
    for (int r = 0; r < kNumRegions; ++r) col_need[c] -= floor[r][c];
  }
  const size_t k = frac_cells.size();
  int64_t best_score = -1;
  uint32_t best_mask = 0;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::array<int64_t, kNumRegions> rs{};
    std::array<int64_t, kSubsets> cs{};
    int64_t score = 0;
    for (size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        ++rs[frac_cells[i].r];
        ++cs[frac_cells[i].c];
        score += frac_cells[i].frac;
      }
    }
    if (rs != row_need || cs != col_need) continue;
    if (score > best_score) {
      best_score = score;
      best_mask = mask;
    }
  }
  if (best_score < 0) throw Error("internal: no consistent split rounding");
  Table out = floor;
  for (size_t i = 0; i < k; ++i) {
    if (best_mask & (1u << i)) ++out[frac_cells[i].r][frac_cells[i].c];
  }
  return out;
}

}  // namespace

DatasetSplit SplitDataset(const Corpus &corpus, const SplitSpec &spec) {
  if (!(spec.train_ratio > 0 && spec.valid_ratio > 0 && spec.test_ratio > 0)) {
    throw ConfigError("split ratios must be positive");
  }
  const double sum = spec.train_ratio + spec.valid_ratio + spec.test_ratio;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("split ratios sum to " + std::to_string(sum) + ", not 1");
  }
  const std::vector<Sentence> all = Flatten(corpus);
  const auto n = static_cast<int64_t>(all.size());

  std::array<std::vector<size_t>, kNumRegions> by_region;
  for (size_t i = 0; i < all.size(); ++i) {
    by_region[Index(all[i].region)].push_back(i);
  }
  std::array<int64_t, kSubsets> cols{};
  cols[1] = std::llround(static_cast<double>(n) * spec.valid_ratio);
  cols[2] = std::llround(static_cast<double>(n) * spec.test_ratio);
  cols[0] = n - cols[1] - cols[2];
  if (cols[0] < 0) throw ConfigError("split ratios leave no training data");

  std::array<int64_t, kNumRegions> rows{};
  for (int r = 0; r < kNumRegions; ++r) {
    rows[r] = static_cast<int64_t>(by_region[r].size());
  }
  DatasetSplit split;
  if (n == 0) return split;
  const Table alloc = RoundQuotas(rows, cols, n);

  std::vector<Subset> assignment(all.size(), Subset::kTrain);
  Rng rng(spec.seed);
  for (int r = 0; r < kNumRegions; ++r) {
    std::vector<size_t> &idx = by_region[r];
    rng.Shuffle(std::span<size_t>(idx));
    const auto n_train = static_cast<size_t>(alloc[r][0]);
    const auto n_valid = static_cast<size_t>(alloc[r][1]);
    for (size_t k = 0; k < idx.size(); ++k) {
      assignment[idx[k]] = k < n_train ? Subset::kTrain
                           : k < n_train + n_valid ? Subset::kValid
                                                   : Subset::kTest;
    }
  }
  for (size_t i = 0; i < all.size(); ++i) {
    switch (assignment[i]) {
      case Subset::kTrain: split.train.push_back(all[i]); break;
      case Subset::kValid: split.valid.push_back(all[i]); break;
      case Subset::kTest: split.test.push_back(all[i]); break;
    }
  }
  return split;
}

DatasetSplit ApplySplit(const Corpus &corpus, const SplitAssignment &split) {
  DatasetSplit out;
  size_t matched = 0;
  for (const Document &doc : corpus) {
    for (const Sentence &s : doc.sentences) {
      const auto it = split.find(s.Key());
      if (it == split.end()) {
        throw ConfigError("sentence " + s.Key() + " is not in the split file");
      }
      ++matched;
      switch (it->second) {
        case Subset::kTrain: out.train.push_back(s); break;
        case Subset::kValid: out.valid.push_back(s); break;
        case Subset::kTest: out.test.push_back(s); break;
      }
    }
  }
  if (matched != split.size()) {
    throw ConfigError("split file names " + std::to_string(split.size() - matched) +
                      " sentences that are not in the corpus");
  }
  return out;
}

SplitAssignment ReadSplitFile(std::istream &in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("split file: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("split file must be a JSON object", 0);
  SplitAssignment out;
  for (Subset s : {Subset::kTrain, Subset::kValid, Subset::kTest}) {
    const std::string name(SubsetName(s));
    if (!j.contains(name)) continue;
    if (!j[name].is_array()) throw ParseError("split '" + name + "' must be an array", 0);
    for (const auto &key : j[name]) {
      if (!key.is_string()) throw ParseError("split keys must be strings", 0);
      if (!out.emplace(key.get<std::string>(), s).second) {
        throw ParseError("sentence " + key.get<std::string>() +
                             " is listed more than once",
                         0);
      }
    }
  }
  return out;
}

void WriteSplitFile(const SplitAssignment &split, std::ostream &out) {
  nlohmann::ordered_json j;
  for (Subset s : {Subset::kTrain, Subset::kValid, Subset::kTest}) {
    j[std::string(SubsetName(s))] = nlohmann::json::array();
  }
  for (const auto &[key, subset] : split) {
    j[std::string(SubsetName(subset))].push_back(key);
  }
  out << j.dump(1) << '\n';
}

SplitAssignment AssignmentOf(const DatasetSplit &split) {
  SplitAssignment out;
  for (const auto &s : split.train) out[s.Key()] = Subset::kTrain;
  for (const auto &s : split.valid) out[s.Key()] = Subset::kValid;
  for (const auto &s : split.test) out[s.Key()] = Subset::kTest;
  return out;
}

}  // namespace histner
