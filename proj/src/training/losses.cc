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

#include "histner/error.h"
#include "histner/training.h"

namespace histner {

std::string_view ModeName(Mode m) {
  switch (m) {
    case Mode::kBaseline: return "baseline";
    case Mode::kGradRev: return "grad_rev";
    case Mode::kLossRev: return "loss_rev";
  }
  return "?";
}

std::optional<Mode> ParseMode(std::string_view s) {
  if (s == "baseline") return Mode::kBaseline;
  if (s == "grad_rev") return Mode::kGradRev;
  if (s == "loss_rev") return Mode::kLossRev;
  return std::nullopt;
}

size_t Batch::tokens() const {
  size_t n = 0;
  for (const auto &s : ids) n += s.size();
  return n;
}

Batch MakeBatch(std::span<const Sentence *const> sentences, size_t vocab_size) {
  Batch b;
  for (const Sentence *s : sentences) {
    b.ids.push_back(Featurize(*s, vocab_size));
    std::vector<int> tags;
    tags.reserve(s->tags.size());
    for (Tag t : s->tags) tags.push_back(t.code());
    if (tags.size() != b.ids.back().size()) {
      throw ValidationError("sentence " + s->Key() + ": tag/token count mismatch");
    }
    b.tags.push_back(std::move(tags));
    b.domains.push_back(Index(s->region));
  }
  return b;
}

Batch MakeBatch(std::span<const Sentence> sentences, size_t vocab_size) {
  std::vector<const Sentence *> ptrs;
  for (const Sentence &s : sentences) ptrs.push_back(&s);
  return MakeBatch(ptrs, vocab_size);
}

LossResult ComputeLosses(const TaggerParams &params, const Batch &batch, Mode mode,
                         double lambda, const LossOptions &options) {
  if (batch.ids.empty()) throw ConfigError("compute_losses: empty batch");
  if (!(lambda >= 0.0)) throw ConfigError("compute_losses: lambda must be >= 0");
  if (batch.tags.size() != batch.ids.size() || batch.domains.size() != batch.ids.size()) {
    throw ValidationError("compute_losses: inconsistent batch");
  }

  ForwardOptions fo;
  fo.trainable = true;
  const bool fit_probe = mode == Mode::kBaseline && options.fit_discriminator;
  if (mode == Mode::kGradRev) fo.discriminator_grad_scale = -lambda;
  if (fit_probe) fo.discriminator_grad_scale = 0.0;

  ad::Graph g;
  const BatchGraph b = BuildBatch(g, params, batch.ids, fo);

  std::vector<int> tag_targets, domain_targets;
  for (size_t k = 0; k < batch.ids.size(); ++k) {
    tag_targets.insert(tag_targets.end(), batch.tags[k].begin(), batch.tags[k].end());
    domain_targets.insert(domain_targets.end(), batch.ids[k].size(), batch.domains[k]);
  }
  const ad::Var ner_loss = ad::Mean(ad::SoftmaxCrossEntropy(b.ner_logits, tag_targets));
  const ad::Var domain_loss =
      ad::Mean(ad::SoftmaxCrossEntropy(b.domain_logits, domain_targets));

  ad::Var objective;
  LossResult result;
  result.losses.ner_loss = ner_loss.value()[0];
  result.losses.domain_loss = domain_loss.value()[0];
  switch (mode) {
    case Mode::kBaseline:
      objective = fit_probe ? ad::Add(ner_loss, domain_loss) : ner_loss;
      result.losses.total = result.losses.ner_loss;
      break;
    case Mode::kGradRev:
      objective = ad::Add(ner_loss, domain_loss);
      result.losses.total = objective.value()[0];
      break;
    case Mode::kLossRev:
      objective = ad::Sub(ner_loss, ad::Scale(domain_loss, lambda));
      result.losses.total = objective.value()[0];
      break;
  }
  if (!std::isfinite(result.losses.total)) {
    std::ostringstream msg;
    msg << "non-finite loss in mode " << ModeName(mode) << ": L_y=" << result.losses.ner_loss
        << " L_d=" << result.losses.domain_loss << " lambda=" << lambda
        << " batch_tokens=" << batch.tokens();
    throw NumericError(msg.str());
  }
  g.Backward(objective);
  for (size_t i = 0; i < kNumParams; ++i) result.grads[i] = b.params[i].grad();
  return result;
}

}  // namespace histner
