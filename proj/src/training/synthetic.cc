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

#include "histner/synthetic.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "histner/rng.h"

namespace histner::synthetic {

namespace {

constexpr const char *kOnsets[] = {"b", "c", "d", "f", "g", "l", "m", "n",
                                   "p", "r", "s", "t", "v", "z", "br", "st"};
constexpr const char *kVowels[] = {"a", "e", "i", "o", "u", "ea", "ia"};

// Pronounceable pseudo-word, deterministic in (rng state, syllables).
std::string Word(Rng &rng, int syllables) {
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w += kOnsets[rng.Below(std::size(kOnsets))];
    w += kVowels[rng.Below(std::size(kVowels))];
  }
  return w;
}

std::vector<std::string> Words(Rng &rng, size_t n, int syllables,
                               const std::string &suffix = "") {
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w = Word(rng, syllables) + suffix;
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

struct Mention {
  std::vector<std::string> tokens;
  std::optional<EntityLabel> label;  // nullopt: plain text
};

Sentence Assemble(const std::string &doc_id, size_t index, Region region,
                  const std::vector<Mention> &parts) {
  std::vector<std::string> tokens;
  TagSequence tags;
  for (const Mention &m : parts) {
    for (size_t k = 0; k < m.tokens.size(); ++k) {
      tokens.push_back(m.tokens[k]);
      if (!m.label) {
        tags.push_back(Tag::Outside());
      } else {
        tags.push_back(k == 0 ? Tag::Begin(*m.label) : Tag::Inside(*m.label));
      }
    }
  }
  return MakeSentence(doc_id, index, region, std::move(tokens), std::move(tags));
}

// Groups sentences into documents of `per_doc` sentences.
void AddSentence(Corpus &corpus, const std::string &prefix, Region region,
                 size_t per_doc, const std::function<Sentence(const std::string &, size_t)> &make) {
  if (corpus.empty() || corpus.back().region != region ||
      corpus.back().sentences.size() >= per_doc ||
      corpus.back().id.rfind(prefix, 0) != 0) {
    Document doc;
    doc.id = prefix + std::to_string(corpus.size());
    doc.region = region;
    corpus.push_back(std::move(doc));
  }
  Document &doc = corpus.back();
  doc.sentences.push_back(make(doc.id, doc.sentences.size()));
}

}  // namespace

Corpus Separable(size_t n_sentences, uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> filler = Words(rng, 40, 2);
  std::array<std::vector<std::string>, kNumLabels> lexicon;
  for (auto &l : lexicon) l = Words(rng, 3, 3, "x");
  Corpus corpus;
  for (size_t i = 0; i < n_sentences; ++i) {
    const Region region = kAllRegions[i % kNumRegions];
    AddSentence(corpus, "sep", region, 10, [&](const std::string &id, size_t idx) {
      const size_t len = 5 + rng.Below(6);
      const size_t n_ent = 1 + rng.Below(2);
      std::vector<Mention> parts;
      for (size_t k = 0; k < len; ++k) parts.push_back({{filler[rng.Below(filler.size())]}, {}});
      for (size_t e = 0; e < n_ent; ++e) {
        const EntityLabel l = kAllLabels[rng.Below(kNumLabels)];
        const size_t pos = rng.Below(parts.size());
        parts[pos] = Mention{{lexicon[Index(l)][rng.Below(3)]}, l};
      }
      return Assemble(id, idx, region, parts);
    });
  }
  return corpus;
}


namespace {

struct Generator {
  std::vector<std::string> filler;
  std::array<std::vector<std::string>, kNumLabels> lexicon;
  std::array<std::string, kNumLabels> trigger;
};

Generator MakeGenerator(Rng &rng, const std::string &suffix,
                        const std::array<std::vector<std::string>, kNumLabels> &shared) {
  Generator g;
  g.filler = Words(rng, 40, 2, suffix);
  for (int l = 0; l < kNumLabels; ++l) {
    g.lexicon[l] = Words(rng, 12, 3, suffix);
    g.lexicon[l].insert(g.lexicon[l].end(), shared[l].begin(), shared[l].end());
    g.trigger[l] = Word(rng, 2) + "q" + suffix;
  }
  return g;
}

Mention EntityMention(Rng &rng, const Generator &g, EntityLabel l) {
  const auto &lex = g.lexicon[Index(l)];
  Mention m{{lex[rng.Below(lex.size())]}, l};
  // Persons and dates often span two tokens.
  if ((l == EntityLabel::kPerson || l == EntityLabel::kDate) && rng.Bernoulli(0.5)) {
    m.tokens.push_back(lex[rng.Below(lex.size())]);
  }
  return m;
}

Sentence GeneratedSentence(Rng &rng, const Generator &g, const std::string &id,
                           size_t idx, Region region) {
  std::vector<Mention> parts;
  const size_t len = 6 + rng.Below(8);
  while (parts.size() < len) {
    if (rng.Bernoulli(0.15)) {
      const EntityLabel l = kAllLabels[rng.Below(kNumLabels)];
      if (rng.Bernoulli(0.5)) parts.push_back({{g.trigger[Index(l)]}, {}});
      parts.push_back(EntityMention(rng, g, l));
    } else {
      parts.push_back({{g.filler[rng.Below(g.filler.size())]}, {}});
    }
  }
  return Assemble(id, idx, region, parts);
}

}  // namespace

Corpus SharedGenerator(size_t sentences_per_region, uint64_t seed) {
  Rng rng(seed);
  std::array<std::vector<std::string>, kNumLabels> shared;
  for (auto &s : shared) s = Words(rng, 3, 3, "k");
  const std::array<Generator, 3> gens = {MakeGenerator(rng, "", shared),
                                         MakeGenerator(rng, "u", shared),
                                         MakeGenerator(rng, "ei", shared)};
  const std::array<int, kNumRegions> gen_of = {0, 0, 1, 2};
  Corpus corpus;
  for (Region r : kAllRegions) {
    for (size_t i = 0; i < sentences_per_region; ++i) {
      AddSentence(corpus, "shared", r, 10, [&](const std::string &id, size_t idx) {
        return GeneratedSentence(rng, gens[gen_of[Index(r)]], id, idx, r);
      });
    }
  }
  return corpus;
}

Corpus TwoDomain(const TwoDomainOptions &options) {
  Rng rng(options.seed);
  const std::vector<std::string> base = Words(rng, 20, 2);
  std::array<std::vector<std::string>, kNumLabels> lexicon;
  for (auto &l : lexicon) l = Words(rng, 10, 3, "x");
  const std::vector<std::string> cues = Words(rng, 16, 2, "z");

  auto make = [&](bool target) {
    return [&, target](const std::string &id, size_t idx) {
      const Region region = target ? Region::kTransylvania : Region::kBessarabia;
      const std::string spelling = target ? "u" : "";
      std::vector<Mention> parts;
      const size_t len = 6 + rng.Below(8);
      while (parts.size() < len) {
        const double u = rng.Uniform();
        if (u < 0.12) {
          const EntityLabel l = kAllLabels[rng.Below(kNumLabels)];
          parts.push_back({{lexicon[Index(l)][rng.Below(10)] + spelling}, l});
        } else if (u < 0.24) {
          const size_t c = rng.Below(cues.size());
          const bool is_entity = (c < cues.size() / 2) != target;
          parts.push_back({{cues[c]},
                           is_entity ? std::optional(EntityLabel::kLocation) : std::nullopt});
        } else {
          parts.push_back({{base[rng.Below(base.size())] + spelling}, {}});
        }
      }
      return Assemble(id, idx, region, parts);
    };
  };
  Corpus corpus;
  for (size_t i = 0; i < options.source_sentences; ++i) {
    AddSentence(corpus, "src", Region::kBessarabia, 10, make(false));
  }
  for (size_t i = 0; i < options.target_sentences; ++i) {
    AddSentence(corpus, "tgt", Region::kTransylvania, 10, make(true));
  }
  return corpus;
}

}  // namespace histner::synthetic
