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

#ifndef HISTNER_MODEL_H_
#define HISTNER_MODEL_H_

// Windowed feed-forward token tagger with three parameter blocks: a shared
// feature extractor, an NER head and a per-token domain discriminator.
//
//   x_i = [emb(t_{i-w}) ... emb(t_{i+w})]    (padding row beyond the edges)
//   h_i = tanh(x_i W_h + b_h)                feature extractor
//   ner_i = h_i W_c + b_c                    11 IOB2 tags
//   dom_i = h_i W_d + b_d                    4 regions

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "histner/autodiff.h"
#include "histner/corpus.h"

namespace histner {

struct TaggerConfig {
  size_t vocab_size = size_t{1} << 15;
  size_t embed_dim = 64;
  size_t hidden_dim = 128;
  size_t context_window = 2;  // tokens on each side
  size_t n_tags = Tag::kCount;
  size_t n_domains = kNumRegions;
  uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
  size_t window_width() const { return 2 * context_window + 1; }
};

enum class Block : uint8_t { kFeature, kClassifier, kDiscriminator };
std::string_view BlockName(Block b);

// Fixed parameter slots.
enum ParamIndex : size_t {
  kEmbedding = 0,
  kHiddenWeight,
  kHiddenBias,
  kNerWeight,
  kNerBias,
  kDomainWeight,
  kDomainBias,
  kNumParams,
};

std::string_view ParamName(size_t index);
Block ParamBlock(size_t index);
std::vector<size_t> ParamShape(const TaggerConfig &config, size_t index);

struct TaggerParams {
  TaggerConfig config;
  std::array<ad::Array, kNumParams> values;

  size_t Count() const;
  size_t Count(Block b) const;
};

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero, drawn from a
// generator seeded with config.seed. The embedding table has one extra row
// used as padding; its fan-in is taken as 1.
TaggerParams InitParams(const TaggerConfig &config);

// 64-bit FNV-1a of the lowercased UTF-8 token, reduced mod vocab_size.
int HashToken(std::string_view token, size_t vocab_size);
std::vector<int> Featurize(std::span<const std::string> tokens, size_t vocab_size);
std::vector<int> Featurize(const Sentence &sentence, size_t vocab_size);

struct ForwardOptions {
  // Parameters become graph Parameters (gradients tracked) when true.
  bool trainable = false;
  // When set, the discriminator reads ScaleGradient(h, factor) instead of h.
  std::optional<double> discriminator_grad_scale;
};

// Graph nodes for a batch of sentences, tokens stacked in batch order.
struct BatchGraph {
  std::array<ad::Var, kNumParams> params;
  ad::Var features;       // [n_tokens, hidden]
  ad::Var ner_logits;     // [n_tokens, n_tags]
  ad::Var domain_logits;  // [n_tokens, n_domains]
  std::vector<size_t> offsets;  // sentence k covers rows offsets[k]..offsets[k+1]
};

// Every sentence must be non-empty.
BatchGraph BuildBatch(ad::Graph &graph, const TaggerParams &params,
                      std::span<const std::vector<int>> sentences,
                      const ForwardOptions &options = {});

struct ForwardOutput {
  ad::Array features;
  ad::Array ner_logits;
  ad::Array domain_logits;
};

ForwardOutput Forward(const TaggerParams &params, std::span<const int> ids);

// Per-token argmax of the NER logits, lowest index on ties. The result may
// contain stray I- tags; DecodeIob repairs them.
TagSequence PredictTags(const TaggerParams &params, const Sentence &sentence);
// Per-token argmax of the domain logits.
std::vector<int> PredictDomains(const TaggerParams &params, const Sentence &sentence);

// JSON checkpoint: format tag, version, config, flat arrays per parameter.
void SaveCheckpoint(const TaggerParams &params, std::ostream &out);
TaggerParams LoadCheckpoint(std::istream &in);

}  // namespace histner

#endif  // HISTNER_MODEL_H_
