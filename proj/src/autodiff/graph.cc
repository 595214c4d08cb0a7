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

#include "histner/autodiff.h"
#include "histner/error.h"

namespace histner::ad {

const Array &Var::value() const { return graph_->value(id_); }
const Array &Var::grad() const { return graph_->grad(id_); }

Var Graph::Parameter(Array value) {
  if (!value.AllFinite()) throw NumericError("parameter holds NaN/Inf");
  Node n;
  n.grad = Array(value.shape());
  n.value = std::move(value);
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Graph::Constant(Array value) {
  if (!value.AllFinite()) throw NumericError("constant holds NaN/Inf");
  Node n;
  n.grad = Array(value.shape());
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

Var Graph::Record(const char *op, Array value, std::vector<size_t> parents,
                  BackwardFn backward) {
  if (!value.AllFinite()) {
    throw NumericError(std::string(op) + " produced NaN/Inf");
  }
  Node n;
  n.requires_grad = std::any_of(parents.begin(), parents.end(),
                                [&](size_t p) { return nodes_[p].requires_grad; });
  n.grad = Array(value.shape());
  n.value = std::move(value);
  n.parents = std::move(parents);
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

void Graph::Backward(Var loss) {
  if (&loss.graph() != this) throw Error("backward: loss belongs to another graph");
  if (backward_done_) {
    throw Error("backward called twice on the same graph without ZeroGrad()");
  }
  Node &root = nodes_[loss.id()];
  if (root.value.size() != 1) {
    throw ShapeError("backward: loss must be a scalar, got shape " +
                     root.value.ShapeString());
  }
  backward_done_ = true;
  root.grad[0] = 1.0;
  for (size_t id = loss.id() + 1; id-- > 0;) {
    if (nodes_[id].backward) nodes_[id].backward(*this, id);
  }
  for (size_t id = 0; id <= loss.id(); ++id) {
    if (!nodes_[id].grad.AllFinite()) {
      throw NumericError("backward produced NaN/Inf gradient at node " +
                         std::to_string(id));
    }
  }
}

void Graph::ZeroGrad() {
  for (Node &n : nodes_) n.grad.Fill(0.0);
  backward_done_ = false;
}

// ---- ops ----------------------------------------------------------------------

namespace {

void RequireSameGraph(Var a, Var b, const char *op) {
  if (&a.graph() != &b.graph()) {
    throw Error(std::string(op) + ": operands belong to different graphs");
  }
}

[[noreturn]] void ShapeMismatch(const char *op, const Array &a, const Array &b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + a.ShapeString() +
                   " and " + b.ShapeString());
}

}  // namespace

Var MatMul(Var a, Var b) {
  RequireSameGraph(a, b, "matmul");
  const Array &av = a.value();
  const Array &bv = b.value();
  if (av.rank() != 2 || bv.rank() != 2 || av.cols() != bv.rows()) {
    ShapeMismatch("matmul", av, bv);
  }
  const size_t m = av.rows(), k = av.cols(), n = bv.cols();
  Array out({m, n});
  for (size_t i = 0; i < m; ++i) {
    double *orow = &out.at(i, 0);
    for (size_t p = 0; p < k; ++p) {
      const double x = av.at(i, p);
      if (x == 0.0) continue;
      const double *brow = &bv.data()[p * n];
      for (size_t j = 0; j < n; ++j) orow[j] += x * brow[j];
    }
  }
  Graph &g = a.graph();
  const size_t ia = a.id(), ib = b.id();
  return g.Record("matmul", std::move(out), {ia, ib}, [ia, ib, m, k, n](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    if (g.requires_grad(ia)) {
      // dA = dOut * B^T
      const Array &bv = g.value(ib);
      Array &ga = g.mutable_grad(ia);
      for (size_t i = 0; i < m; ++i) {
        for (size_t p = 0; p < k; ++p) {
          const double *brow = &bv.data()[p * n];
          const double *grow = &go.data()[i * n];
          double acc = 0.0;
          for (size_t j = 0; j < n; ++j) acc += grow[j] * brow[j];
          ga.at(i, p) += acc;
        }
      }
    }
    if (g.requires_grad(ib)) {
      // dB = A^T * dOut
      const Array &av = g.value(ia);
      Array &gb = g.mutable_grad(ib);
      for (size_t i = 0; i < m; ++i) {
        const double *grow = &go.data()[i * n];
        for (size_t p = 0; p < k; ++p) {
          const double x = av.at(i, p);
          if (x == 0.0) continue;
          double *gbrow = &gb.data()[p * n];
          for (size_t j = 0; j < n; ++j) gbrow[j] += x * grow[j];
        }
      }
    }
  });
}

Var Add(Var a, Var b) {
  RequireSameGraph(a, b, "add");
  const Array &av = a.value();
  const Array &bv = b.value();
  Graph &g = a.graph();
  const size_t ia = a.id(), ib = b.id();
  if (av.shape() == bv.shape()) {
    Array out = av;
    for (size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
    return g.Record("add", std::move(out), {ia, ib}, [ia, ib](Graph &g, size_t self) {
      const Array &go = g.grad(self);
      for (size_t id : {ia, ib}) {
        if (!g.requires_grad(id)) continue;
        Array &gp = g.mutable_grad(id);
        for (size_t i = 0; i < go.size(); ++i) gp[i] += go[i];
      }
    });
  }
  // Row broadcast: [m,n] + [n].
  if (av.rank() == 2 && bv.rank() == 1 && av.cols() == bv.size()) {
    const size_t m = av.rows(), n = av.cols();
    Array out = av;
    for (size_t i = 0; i < m; ++i) {
      for (size_t j = 0; j < n; ++j) out.at(i, j) += bv[j];
    }
    return g.Record("add", std::move(out), {ia, ib}, [ia, ib, m, n](Graph &g, size_t self) {
      const Array &go = g.grad(self);
      if (g.requires_grad(ia)) {
        Array &ga = g.mutable_grad(ia);
        for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
      }
      if (g.requires_grad(ib)) {
        Array &gb = g.mutable_grad(ib);
        for (size_t i = 0; i < m; ++i) {
          for (size_t j = 0; j < n; ++j) gb[j] += go.at(i, j);
        }
      }
    });
  }
  ShapeMismatch("add", av, bv);
}

Var Sub(Var a, Var b) {
  RequireSameGraph(a, b, "sub");
  const Array &av = a.value();
  const Array &bv = b.value();
  if (av.shape() != bv.shape()) ShapeMismatch("sub", av, bv);
  Array out = av;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  const size_t ia = a.id(), ib = b.id();
  return a.graph().Record("sub", std::move(out), {ia, ib}, [ia, ib](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    if (g.requires_grad(ia)) {
      Array &ga = g.mutable_grad(ia);
      for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
    }
    if (g.requires_grad(ib)) {
      Array &gb = g.mutable_grad(ib);
      for (size_t i = 0; i < go.size(); ++i) gb[i] -= go[i];
    }
  });
}

Var Mul(Var a, Var b) {
  RequireSameGraph(a, b, "mul");
  const Array &av = a.value();
  const Array &bv = b.value();
  if (av.shape() != bv.shape()) ShapeMismatch("mul", av, bv);
  Array out = av;
  for (size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const size_t ia = a.id(), ib = b.id();
  return a.graph().Record("mul", std::move(out), {ia, ib}, [ia, ib](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    const Array &av = g.value(ia);
    const Array &bv = g.value(ib);
    if (g.requires_grad(ia)) {
      Array &ga = g.mutable_grad(ia);
      for (size_t i = 0; i < go.size(); ++i) ga[i] += go[i] * bv[i];
    }
    if (g.requires_grad(ib)) {
      Array &gb = g.mutable_grad(ib);
      for (size_t i = 0; i < go.size(); ++i) gb[i] += go[i] * av[i];
    }
  });
}

Var Scale(Var x, double factor) {
  Array out = x.value();
  for (size_t i = 0; i < out.size(); ++i) out[i] *= factor;
  const size_t ix = x.id();
  return x.graph().Record("scale", std::move(out), {ix}, [ix, factor](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    Array &gx = g.mutable_grad(ix);
    for (size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * factor;
  });
}

Var Tanh(Var x) {
  Array out = x.value();
  for (size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
  const size_t ix = x.id();
  return x.graph().Record("tanh", std::move(out), {ix}, [ix](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    const Array &y = g.value(self);
    Array &gx = g.mutable_grad(ix);
    for (size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * (1.0 - y[i] * y[i]);
  });
}

Var Relu(Var x) {
  Array out = x.value();
  for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] > 0.0 ? out[i] : 0.0;
  const size_t ix = x.id();
  return x.graph().Record("relu", std::move(out), {ix}, [ix](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    const Array &xv = g.value(ix);
    Array &gx = g.mutable_grad(ix);
    for (size_t i = 0; i < go.size(); ++i) {
      if (xv[i] > 0.0) gx[i] += go[i];
    }
  });
}

Var EmbeddingLookup(Var table, std::span<const int> ids) {
  const Array &tv = table.value();
  if (tv.rank() != 2) {
    throw ShapeError("embedding_lookup: table must be 2-D, got " + tv.ShapeString());
  }
  const size_t v = tv.rows(), d = tv.cols();
  Array out({ids.size(), d});
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<size_t>(ids[i]) >= v) {
      throw ShapeError("embedding_lookup: id " + std::to_string(ids[i]) +
                       " outside table of " + std::to_string(v) + " rows");
    }
    std::copy_n(&tv.data()[ids[i] * d], d, &out.at(i, 0));
  }
  const size_t it = table.id();
  std::vector<int> saved(ids.begin(), ids.end());
  return table.graph().Record(
      "embedding_lookup", std::move(out), {it},
      [it, d, saved = std::move(saved)](Graph &g, size_t self) {
        const Array &go = g.grad(self);
        Array &gt = g.mutable_grad(it);
        for (size_t i = 0; i < saved.size(); ++i) {
          double *row = &gt.data()[saved[i] * d];
          for (size_t j = 0; j < d; ++j) row[j] += go.at(i, j);
        }
      });
}

Var Concat(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeError("concat: no inputs");
  Graph &g = parts[0].graph();
  const size_t m = parts[0].value().rows();
  std::vector<size_t> widths, ids;
  size_t total = 0;
  for (const Var &p : parts) {
    if (&p.graph() != &g) throw Error("concat: operands belong to different graphs");
    const Array &pv = p.value();
    if (pv.rank() != 2 || pv.rows() != m) {
      ShapeMismatch("concat", parts[0].value(), pv);
    }
    widths.push_back(pv.cols());
    ids.push_back(p.id());
    total += pv.cols();
  }
  Array out({m, total});
  size_t offset = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    const Array &pv = parts[k].value();
    for (size_t i = 0; i < m; ++i) {
      std::copy_n(&pv.data()[i * widths[k]], widths[k], &out.at(i, offset));
    }
    offset += widths[k];
  }
  std::vector<size_t> parents = ids;
  return g.Record("concat", std::move(out), std::move(parents),
                  [ids, widths, m, total](Graph &g, size_t self) {
                    const Array &go = g.grad(self);
                    size_t offset = 0;
                    for (size_t k = 0; k < ids.size(); ++k) {
                      if (g.requires_grad(ids[k])) {
                        Array &gp = g.mutable_grad(ids[k]);
                        for (size_t i = 0; i < m; ++i) {
                          for (size_t j = 0; j < widths[k]; ++j) {
                            gp.data()[i * widths[k] + j] += go.data()[i * total + offset + j];
                          }
                        }
                      }
                      offset += widths[k];
                    }
                  });
}

Var Concat(std::initializer_list<Var> parts) {
  return Concat(std::span<const Var>(parts.begin(), parts.size()));
}

Var Sum(Var x) {
  double s = 0.0;
  for (double v : x.value().data()) s += v;
  const size_t ix = x.id();
  return x.graph().Record("sum", Array::Scalar(s), {ix}, [ix](Graph &g, size_t self) {
    const double go = g.grad(self)[0];
    Array &gx = g.mutable_grad(ix);
    for (size_t i = 0; i < gx.size(); ++i) gx[i] += go;
  });
}

Var Mean(Var x) {
  const size_t n = x.value().size();
  if (n == 0) throw ShapeError("mean: empty input");
  double s = 0.0;
  for (double v : x.value().data()) s += v;
  const double inv = 1.0 / static_cast<double>(n);
  const size_t ix = x.id();
  return x.graph().Record("mean", Array::Scalar(s * inv), {ix}, [ix, inv](Graph &g, size_t self) {
    const double go = g.grad(self)[0] * inv;
    Array &gx = g.mutable_grad(ix);
    for (size_t i = 0; i < gx.size(); ++i) gx[i] += go;
  });
}

Var SoftmaxCrossEntropy(Var logits, std::span<const int> targets) {
  const Array &lv = logits.value();
  if (lv.rank() != 2 || lv.rows() != targets.size()) {
    throw ShapeError("softmax_cross_entropy: logits " + lv.ShapeString() + " vs " +
                     std::to_string(targets.size()) + " targets");
  }
  const size_t m = lv.rows(), c = lv.cols();
  Array probs({m, c});
  Array out({m});
  for (size_t i = 0; i < m; ++i) {
    if (targets[i] < 0 || static_cast<size_t>(targets[i]) >= c) {
      throw ShapeError("softmax_cross_entropy: target " + std::to_string(targets[i]) +
                       " outside " + std::to_string(c) + " classes");
    }
    double mx = lv.at(i, 0);
    for (size_t j = 1; j < c; ++j) mx = std::max(mx, lv.at(i, j));
    double z = 0.0;
    for (size_t j = 0; j < c; ++j) {
      probs.at(i, j) = std::exp(lv.at(i, j) - mx);
      z += probs.at(i, j);
    }
    for (size_t j = 0; j < c; ++j) probs.at(i, j) /= z;
    out[i] = std::log(z) + mx - lv.at(i, targets[i]);
  }
  const size_t il = logits.id();
  std::vector<int> saved(targets.begin(), targets.end());
  return logits.graph().Record(
      "softmax_cross_entropy", std::move(out), {il},
      [il, m, c, probs = std::move(probs), saved = std::move(saved)](Graph &g, size_t self) {
        const Array &go = g.grad(self);
        Array &gl = g.mutable_grad(il);
        for (size_t i = 0; i < m; ++i) {
          for (size_t j = 0; j < c; ++j) {
            const double onehot = static_cast<int>(j) == saved[i] ? 1.0 : 0.0;
            gl.at(i, j) += go[i] * (probs.at(i, j) - onehot);
          }
        }
      });
}

Var SoftmaxCrossEntropy(Var logits, int target) {
  const Array &lv = logits.value();
  if (lv.rank() == 1) {
    // 1-D logits are viewed as a single row.
    const size_t c = lv.size();
    const size_t il = logits.id();
    Var row = logits.graph().Record(
        "reshape", Array({1, c}, std::vector<double>(lv.data().begin(), lv.data().end())),
        {il}, [il](Graph &g, size_t self) {
          const Array &go = g.grad(self);
          Array &gl = g.mutable_grad(il);
          for (size_t i = 0; i < go.size(); ++i) gl[i] += go[i];
        });
    return Sum(SoftmaxCrossEntropy(row, std::span<const int>(&target, 1)));
  }
  return Sum(SoftmaxCrossEntropy(logits, std::span<const int>(&target, 1)));
}

Var ScaleGradient(Var x, double factor) {
  const size_t ix = x.id();
  return x.graph().Record("scale_gradient", x.value(), {ix}, [ix, factor](Graph &g, size_t self) {
    const Array &go = g.grad(self);
    Array &gx = g.mutable_grad(ix);
    for (size_t i = 0; i < go.size(); ++i) gx[i] += go[i] * factor;
  });
}

}  // namespace histner::ad
