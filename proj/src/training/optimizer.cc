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
#include "histner/training.h"

namespace histner {

double ClipGradients(std::span<ad::Array *const> grads, double max_norm) {
  double sq = 0.0;
  for (const ad::Array *g : grads) {
    for (double v : g->data()) sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double factor = max_norm / norm;
    for (ad::Array *g : grads) {
      for (double &v : g->data()) v *= factor;
    }
  }
  return norm;
}

OptimState OptimState::For(const TaggerParams &params) {
  OptimState s;
  for (size_t i = 0; i < kNumParams; ++i) {
    s.m[i] = ad::Array(params.values[i].shape());
    s.v[i] = ad::Array(params.values[i].shape());
  }
  return s;
}

void AdamStep(std::span<ad::Array> params, std::span<const ad::Array> grads,
              OptimState &state, double lr, double weight_decay) {
  if (params.size() != grads.size() || params.size() > state.m.size()) {
    throw ShapeError("adam: parameter/gradient count mismatch");
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t k = 0; k < params.size(); ++k) {
    ad::Array &p = params[k];
    const ad::Array &g = grads[k];
    ad::Array &m = state.m[k];
    ad::Array &v = state.v[k];
    if (g.shape() != p.shape() || m.shape() != p.shape()) {
      throw ShapeError("adam: shape mismatch for parameter " + std::to_string(k));
    }
    for (size_t i = 0; i < p.size(); ++i) {
      p[i] -= lr * weight_decay * p[i];
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / c1;
      const double v_hat = v[i] / c2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
  }
}

void AdamStep(TaggerParams &params, const Gradients &grads, OptimState &state,
              double lr, double weight_decay) {
  AdamStep(std::span<ad::Array>(params.values), std::span<const ad::Array>(grads),
           state, lr, weight_decay);
}

}  // namespace histner
