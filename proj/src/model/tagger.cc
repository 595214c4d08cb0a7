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

#include "histner/error.h"
#include "histner/model.h"
#include "histner/rng.h"
#include "histner/utf8.h"

namespace histner {

void TaggerConfig::Validate() const {
  if (vocab_size < 1 || embed_dim < 1 || hidden_dim < 1 || n_tags < 1 ||
      n_domains < 1) {
    throw ConfigError("tagger dimensions must be at least 1");
  }
  if (n_tags != static_cast<size_t>(Tag::kCount)) {
    throw ConfigError("tagger must predict the " + std::to_string(Tag::kCount) +
                      " IOB2 tags");
  }
  if (n_domains != static_cast<size_t>(kNumRegions)) {
    throw ConfigError("tagger must discriminate the " +
                      std::to_string(kNumRegions) + " regions");
  }
  if (vocab_size > (size_t{1} << 30)) throw ConfigError("vocab_size too large");
}

std::string_view BlockName(Block b) {
  switch (b) {
    case Block::kFeature: return "feature";
    case Block::kClassifier: return "classifier";
    case Block::kDiscriminator: return "discriminator";
  }
  return "?";
}

std::string_view ParamName(size_t index) {
  static constexpr std::array<std::string_view, kNumParams> kNames = {
      "embedding",  "hidden.weight", "hidden.bias", "ner.weight",
      "ner.bias",   "domain.weight", "domain.bias"};
  return kNames.at(index);
}

Block ParamBlock(size_t index) {
  switch (index) {
    case kEmbedding:
    case kHiddenWeight:
    case kHiddenBias:
      return Block::kFeature;
    case kNerWeight:
    case kNerBias:
      return Block::kClassifier;
    default:
      return Block::kDiscriminator;
  }
}

std::vector<size_t> ParamShape(const TaggerConfig &c, size_t index) {
  switch (index) {
    case kEmbedding: return {c.vocab_size + 1, c.embed_dim};
    case kHiddenWeight: return {c.window_width() * c.embed_dim, c.hidden_dim};
    case kHiddenBias: return {c.hidden_dim};
    case kNerWeight: return {c.hidden_dim, c.n_tags};
    case kNerBias: return {c.n_tags};
    case kDomainWeight: return {c.hidden_dim, c.n_domains};
    case kDomainBias: return {c.n_domains};
    default: throw ConfigError("no parameter slot " + std::to_string(index));
  }
}

size_t TaggerParams::Count() const {
  size_t n = 0;
  for (const auto &v : values) n += v.size();
  return n;
}

size_t TaggerParams::Count(Block b) const {
  size_t n = 0;
  for (size_t i = 0; i < kNumParams; ++i) {
    if (ParamBlock(i) == b) n += values[i].size();
  }
  return n;
}

TaggerParams InitParams(const TaggerConfig &config) {
  config.Validate();
  TaggerParams p;
  p.config = config;
  Rng rng(config.seed);
  for (size_t i = 0; i < kNumParams; ++i) {
    ad::Array a(ParamShape(config, i));
    if (a.rank() == 2) {
      const double fan_in = i == kEmbedding ? 1.0 : static_cast<double>(a.rows());
      const double bound = 1.0 / std::sqrt(fan_in);
      for (double &v : a.data()) v = rng.Uniform(-bound, bound);
    }
    p.values[i] = std::move(a);
  }
  return p;
}

int HashToken(std::string_view token, size_t vocab_size) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : utf8::ToLower(token)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<int>(h % vocab_size);
}

std::vector<int> Featurize(std::span<const std::string> tokens, size_t vocab_size) {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto &t : tokens) ids.push_back(HashToken(t, vocab_size));
  return ids;
}

std::vector<int> Featurize(const Sentence &sentence, size_t vocab_size) {
  std::vector<int> ids;
  ids.reserve(sentence.tokens.size());
  for (const auto &t : sentence.tokens) ids.push_back(HashToken(t.text, vocab_size));
  return ids;
}

BatchGraph BuildBatch(ad::Graph &graph, const TaggerParams &params,
                      std::span<const std::vector<int>> sentences,
                      const ForwardOptions &options) {
  const TaggerConfig &cfg = params.config;
  BatchGraph out;
  for (size_t i = 0; i < kNumParams; ++i) {
    out.params[i] = options.trainable ? graph.Parameter(params.values[i])
                                      : graph.Constant(params.values[i]);
  }
  out.offsets.push_back(0);
  for (const auto &s : sentences) {
    if (s.empty()) throw ValidationError("tagger: empty sentence");
    out.offsets.push_back(out.offsets.back() + s.size());
  }
  const auto pad = static_cast<int>(cfg.vocab_size);
  const auto w = static_cast<std::ptrdiff_t>(cfg.context_window);
  std::vector<ad::Var> columns;
  for (std::ptrdiff_t o = -w; o <= w; ++o) {
    std::vector<int> ids;
    ids.reserve(out.offsets.back());
    for (const auto &s : sentences) {
      const auto n = static_cast<std::ptrdiff_t>(s.size());
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t j = i + o;
        if (j < 0 || j >= n) {
          ids.push_back(pad);
        } else {
          if (s[j] < 0 || s[j] >= pad) throw ValidationError("tagger: token id out of range");
          ids.push_back(s[j]);
        }
      }
    }
    columns.push_back(ad::EmbeddingLookup(out.params[kEmbedding], ids));
  }
  const ad::Var x = ad::Concat(columns);
  out.features = ad::Tanh(ad::Add(ad::MatMul(x, out.params[kHiddenWeight]),
                                  out.params[kHiddenBias]));
  out.ner_logits = ad::Add(ad::MatMul(out.features, out.params[kNerWeight]),
                           out.params[kNerBias]);
  const ad::Var domain_in =
      options.discriminator_grad_scale
          ? ad::ScaleGradient(out.features, *options.discriminator_grad_scale)
          : out.features;
  out.domain_logits = ad::Add(ad::MatMul(domain_in, out.params[kDomainWeight]),
                              out.params[kDomainBias]);
  return out;
}

ForwardOutput Forward(const TaggerParams &params, std::span<const int> ids) {
  ad::Graph graph;
  const std::vector<std::vector<int>> batch{std::vector<int>(ids.begin(), ids.end())};
  const BatchGraph b = BuildBatch(graph, params, batch);
  return ForwardOutput{b.features.value(), b.ner_logits.value(), b.domain_logits.value()};
}

namespace {

std::vector<int> RowArgmax(const ad::Array &logits) {
  std::vector<int> out(logits.rows());
  for (size_t i = 0; i < logits.rows(); ++i) {
    size_t best = 0;
    for (size_t j = 1; j < logits.cols(); ++j) {
      if (logits.at(i, j) > logits.at(i, best)) best = j;
    }
    out[i] = static_cast<int>(best);
  }
  return out;
}

}  // namespace

TagSequence PredictTags(const TaggerParams &params, const Sentence &sentence) {
  const ForwardOutput f = Forward(params, Featurize(sentence, params.config.vocab_size));
  TagSequence tags;
  for (int code : RowArgmax(f.ner_logits)) tags.push_back(Tag::FromCode(code));
  return tags;
}

std::vector<int> PredictDomains(const TaggerParams &params, const Sentence &sentence) {
  const ForwardOutput f = Forward(params, Featurize(sentence, params.config.vocab_size));
  return RowArgmax(f.domain_logits);
}

}  // namespace histner
