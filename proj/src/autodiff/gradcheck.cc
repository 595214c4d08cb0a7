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
#include <numeric>

#include "histner/autodiff.h"
#include "histner/error.h"
#include "histner/rng.h"

namespace histner::ad {

namespace {

double Evaluate(const ScalarFn &f, const std::vector<Array> &params) {
  Graph g;
  std::vector<Var> vars;
  vars.reserve(params.size());
  for (const Array &p : params) vars.push_back(g.Constant(p));
  const Var out = f(g, vars);
  if (out.value().size() != 1) throw ShapeError("gradient check: f must return a scalar");
  const double v = out.value()[0];
  if (!std::isfinite(v)) throw NumericError("gradient check: f is not finite");
  return v;
}

}  // namespace

GradCheckResult FiniteDifferenceCheck(const ScalarFn &f, std::vector<Array> params,
                                      const GradCheckOptions &options) {
  std::vector<Array> analytic;
  {
    Graph g;
    std::vector<Var> vars;
    for (const Array &p : params) vars.push_back(g.Parameter(p));
    const Var out = f(g, vars);
    if (!std::isfinite(out.value()[0])) throw NumericError("gradient check: f is not finite");
    g.Backward(out);
    for (const Var &v : vars) analytic.push_back(v.grad());
  }
  Rng rng(options.seed);
  GradCheckResult result;
  for (size_t k = 0; k < params.size(); ++k) {
    std::vector<size_t> coords(params[k].size());
    std::iota(coords.begin(), coords.end(), size_t{0});
    if (options.max_coords_per_param > 0 &&
        coords.size() > options.max_coords_per_param) {
      rng.Shuffle(std::span<size_t>(coords));
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    for (size_t i : coords) {
      const double saved = params[k][i];
      params[k][i] = saved + options.eps;
      const double plus = Evaluate(f, params);
      params[k][i] = saved - options.eps;
      const double minus = Evaluate(f, params);
      params[k][i] = saved;
      const double numeric = (plus - minus) / (2.0 * options.eps);
      const double a = analytic[k][i];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      result.max_rel_error = std::max(result.max_rel_error, std::abs(a - numeric) / denom);
      ++result.coords_checked;
    }
  }
  return result;
}

}  // namespace histner::ad
