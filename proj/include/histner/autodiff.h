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

#ifndef HISTNER_AUTODIFF_H_
#define HISTNER_AUTODIFF_H_

// Reverse-mode automatic differentiation over dense row-major float64
// arrays. A Graph is built per minibatch, differentiated once and thrown
// away. Nodes are appended in evaluation order, so reverse creation order is
// a reverse topological order and backward visits every node exactly once.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace histner::ad {

class Array {
 public:
  Array() = default;
  explicit Array(std::vector<size_t> shape);  // zero-filled
  Array(std::vector<size_t> shape, std::vector<double> data);

  static Array Scalar(double v) { return Array({}, {v}); }

  const std::vector<size_t> &shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t size() const { return data_.size(); }
  // 2-D accessors; a 1-D array is one row.
  size_t rows() const;
  size_t cols() const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  double &operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }
  double &at(size_t r, size_t c) { return data_[r * cols() + c]; }
  double at(size_t r, size_t c) const { return data_[r * cols() + c]; }

  void Fill(double v);
  bool AllFinite() const;
  std::string ShapeString() const;

  friend bool operator==(const Array &, const Array &) = default;

 private:
  std::vector<size_t> shape_;
  std::vector<double> data_;
};

class Graph;

// Handle to a node of a Graph. Cheap to copy; valid while the graph lives.
class Var {
 public:
  Var() = default;
  Var(Graph *graph, size_t id) : graph_(graph), id_(id) {}

  Graph &graph() const { return *graph_; }
  size_t id() const { return id_; }
  const Array &value() const;
  const Array &grad() const;

 private:
  Graph *graph_ = nullptr;
  size_t id_ = 0;
};

class Graph {
 public:
  Graph() = default;
  Graph(const Graph &) = delete;
  Graph &operator=(const Graph &) = delete;

  // Leaf whose gradient is tracked.
  Var Parameter(Array value);
  // Leaf with no gradient.
  Var Constant(Array value);

  // Populates gradients of every node the scalar `loss` depends on. A second
  // call before ZeroGrad() is an error.
  void Backward(Var loss);
  void ZeroGrad();

  const Array &value(size_t id) const { return nodes_[id].value; }
  const Array &grad(size_t id) const { return nodes_[id].grad; }
  size_t size() const { return nodes_.size(); }

  // Registers an op result. `backward` reads the node's gradient and adds
  // into its parents' gradients. Throws NumericError on non-finite values.
  using BackwardFn = std::function<void(Graph &, size_t self)>;
  Var Record(const char *op, Array value, std::vector<size_t> parents,
             BackwardFn backward);

  Array &mutable_grad(size_t id) { return nodes_[id].grad; }
  bool requires_grad(size_t id) const { return nodes_[id].requires_grad; }

 private:
  struct Node {
    Array value;
    Array grad;
    std::vector<size_t> parents;
    BackwardFn backward;
    bool requires_grad = false;
  };
  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

// ---- ops ----------------------------------------------------------------------

Var MatMul(Var a, Var b);                  // [m,k] x [k,n]
Var Add(Var a, Var b);                     // same shape, or [m,n] + [n]
Var Sub(Var a, Var b);                     // same shape
Var Mul(Var a, Var b);                     // elementwise, same shape
Var Scale(Var x, double factor);           // value and gradient scaled
Var Tanh(Var x);
Var Relu(Var x);                           // subgradient 0 at 0
Var EmbeddingLookup(Var table, std::span<const int> ids);  // [V,d] -> [n,d]
Var Concat(std::span<const Var> parts);    // 2-D, along columns
Var Concat(std::initializer_list<Var> parts);
Var Sum(Var x);                            // -> scalar
Var Mean(Var x);                           // -> scalar
// Per-row -log softmax(logits)[target]; logits [m,c] -> [m].
Var SoftmaxCrossEntropy(Var logits, std::span<const int> targets);
// Single row convenience: logits [c] or [1,c] -> scalar.
Var SoftmaxCrossEntropy(Var logits, int target);
// Identity on values; multiplies the incoming gradient by `factor` on the
// way back. With factor = -lambda this is a gradient reversal layer.
Var ScaleGradient(Var x, double factor);

// ---- finite differences -------------------------------------------------------

// Builds a scalar from graph parameters that wrap `params` in order.
using ScalarFn = std::function<Var(Graph &, std::span<const Var> params)>;

struct GradCheckOptions {
  double eps = 1e-5;
  // When nonzero, at most this many coordinates per parameter are probed,
  // chosen with `seed`. Zero probes all of them.
  size_t max_coords_per_param = 0;
  uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  size_t coords_checked = 0;
};

// Central differences (f(x+eps e) - f(x-eps e)) / 2 eps against autodiff,
// relative error |a-b| / max(|a|, |b|, 1e-8). The caller keeps probe points
// away from non-differentiable kinks such as relu at 0.
GradCheckResult FiniteDifferenceCheck(const ScalarFn &f, std::vector<Array> params,
                                      const GradCheckOptions &options = {});

}  // namespace histner::ad

#endif  // HISTNER_AUTODIFF_H_
