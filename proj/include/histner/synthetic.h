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

#ifndef HISTNER_SYNTHETIC_H_
#define HISTNER_SYNTHETIC_H_

// Seeded synthetic corpora with known structure, used to exercise training
// end to end where real data would be too large or unavailable.

#include <cstdint>

#include "histner/corpus.h"

namespace histner::synthetic {

// Sentences of filler words with single-token entities drawn from a fixed
// lexicon; every entity word always carries the same label. Regions cycle
// through all four.
Corpus Separable(size_t n_sentences, uint64_t seed);

struct TwoDomainOptions {
  size_t source_sentences = 900;
  size_t target_sentences = 300;
  uint64_t seed = 0;
};

// Two regions whose texts differ in spelling. Ordinary words and entity
// names carry a region-specific spelling; a set of shared cue words is an entity in one
// region and ordinary text in the other, so the correct label of a cue
// depends on which region the surrounding spelling signals.
// Source sentences are Bessarabia, target sentences Transylvania.
Corpus TwoDomain(const TwoDomainOptions &options);

// Four regions where Bessarabia and Moldavia are drawn from one generator
// while Transylvania and Wallachia each have their own lexicon and spelling.
Corpus SharedGenerator(size_t sentences_per_region, uint64_t seed);

}  // namespace histner::synthetic

#endif  // HISTNER_SYNTHETIC_H_
