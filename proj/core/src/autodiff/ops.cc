// Copyright 2026 The qfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qfc/autodiff/ops.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qfc/errors.h"

namespace qfc::ad {
namespace {

Tape& SameTape(std::initializer_list<Var> vars) {
  Tape* tape = nullptr;
  for (const Var& v : vars) {
    if (v.tape() == nullptr) throw ContractError("unbound Var");
    if (tape != nullptr && v.tape() != tape) {
      throw ContractError("operands live on different tapes");
    }
    tape = v.tape();
  }
  return *tape;
}

[[noreturn]] void ShapeMismatch(const char* op, const Shape& a,
                                const Shape& b) {
  throw ContractError(std::string(op) + ": shape mismatch " + ShapeString(a) +
                      " vs " + ShapeString(b));
}

void RequireRank(const char* op, const Var& v, int rank) {
  if (v.value().rank() != rank) {
    throw ContractError(std::string(op) + ": expected rank " +
                        std::to_string(rank) + ", got shape " +
                        ShapeString(v.shape()));
  }
}

// Elementwise unary op given f and f' in terms of (x, y).
template <typename F, typename DF>
Var Unary(const char* kind, Var a, F f, DF df) {
  Tape& tape = SameTape({a});
  const Tensor& x = a.value();
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  const int ia = a.id();
  return tape.Record(kind, std::move(y), {ia}, [ia, df](Tape& t, int self) {
    const Tensor& x = t.value(ia);
    const Tensor& y = t.value(self);
    const Tensor& gy = t.upstream(self);
    Tensor& gx = t.AccumulateGrad(ia);
    for (std::size_t i = 0; i < x.size(); ++i) gx[i] += gy[i] * df(x[i], y[i]);
  });
}

// Contiguous groups along the last axis (for layer_norm) or an arbitrary axis
// of a rank <= 2 tensor (for softmax).
struct AxisGroups {
  int groups;
  int length;
  int stride;   // distance between consecutive elements of a group
  int advance;  // distance between first elements of consecutive groups
};

AxisGroups GroupsFor(const Tensor& x, int axis, const char* op) {
  if (x.rank() == 1) {
    if (axis != 0 && axis != -1) {
      throw ContractError(std::string(op) + ": bad axis for " +
                          ShapeString(x.shape()));
    }
    return {1, x.dim(0), 1, 0};
  }
  if (x.rank() == 2) {
    if (axis == 1 || axis == -1) return {x.dim(0), x.dim(1), 1, x.dim(1)};
    if (axis == 0) return {x.dim(1), x.dim(0), x.dim(1), 1};
  }
  throw ContractError(std::string(op) + ": unsupported shape/axis " +
                      ShapeString(x.shape()));
}

}  // namespace

Var Affine(Var w, Var x, Var b) {
  Tape& tape = SameTape({w, x, b});
  const Tensor& W = w.value();
  const Tensor& X = x.value();
  const Tensor& B = b.value();
  if (W.rank() != 2 || (X.rank() != 1 && X.rank() != 2) || B.rank() != 1 ||
      X.shape().back() != W.dim(1) || B.dim(0) != W.dim(0)) {
    throw ContractError("affine: shape mismatch W" + ShapeString(W.shape()) +
                        " x" + ShapeString(X.shape()) + " b" +
                        ShapeString(B.shape()));
  }
  const int out = W.dim(0);
  const int in = W.dim(1);
  const int rows = X.rank() == 1 ? 1 : X.dim(0);
  Tensor y(X.rank() == 1 ? Shape{out} : Shape{rows, out});
  for (int r = 0; r < rows; ++r) {
    const double* xr = X.data().data() + std::size_t(r) * in;
    for (int o = 0; o < out; ++o) {
      const double* wo = W.data().data() + std::size_t(o) * in;
      double acc = B[o];
      for (int i = 0; i < in; ++i) acc += wo[i] * xr[i];
      y[std::size_t(r) * out + o] = acc;
    }
  }
  const int iw = w.id(), ix = x.id(), ib = b.id();
  return tape.Record(
      "affine", std::move(y), {iw, ix, ib},
      [iw, ix, ib, out, in, rows](Tape& t, int self) {
        const Tensor& W = t.value(iw);
        const Tensor& X = t.value(ix);
        const Tensor& gy = t.upstream(self);
        Tensor& gw = t.AccumulateGrad(iw);
        Tensor& gx = t.AccumulateGrad(ix);
        Tensor& gb = t.AccumulateGrad(ib);
        for (int r = 0; r < rows; ++r) {
          const double* xr = X.data().data() + std::size_t(r) * in;
          double* gxr = gx.data().data() + std::size_t(r) * in;
          for (int o = 0; o < out; ++o) {
            const double g = gy[std::size_t(r) * out + o];
            if (g == 0.0) continue;
            gb[o] += g;
            const double* wo = W.data().data() + std::size_t(o) * in;
            double* gwo = gw.data().data() + std::size_t(o) * in;
            for (int i = 0; i < in; ++i) {
              gwo[i] += g * xr[i];
              gxr[i] += g * wo[i];
            }
          }
        }
      });
}

Var Linear(Var w, Var x) {
  Tape& tape = SameTape({w, x});
  const Tensor& W = w.value();
  const Tensor& X = x.value();
  if (W.rank() != 2 || X.rank() != 1 || X.dim(0) != W.dim(1)) {
    ShapeMismatch("linear", W.shape(), X.shape());
  }
  const int out = W.dim(0);
  const int in = W.dim(1);
  Tensor y({out});
  for (int o = 0; o < out; ++o) {
    double acc = 0.0;
    for (int i = 0; i < in; ++i) acc += W.at(o, i) * X[i];
    y[o] = acc;
  }
  const int iw = w.id(), ix = x.id();
  return tape.Record("linear", std::move(y), {iw, ix},
                     [iw, ix, out, in](Tape& t, int self) {
                       const Tensor& W = t.value(iw);
                       const Tensor& X = t.value(ix);
                       const Tensor& gy = t.upstream(self);
                       Tensor& gw = t.AccumulateGrad(iw);
                       Tensor& gx = t.AccumulateGrad(ix);
                       for (int o = 0; o < out; ++o) {
                         for (int i = 0; i < in; ++i) {
                           gw.at(o, i) += gy[o] * X[i];
                           gx[i] += gy[o] * W.at(o, i);
                         }
                       }
                     });
}

Var MatMul(Var a, Var b) {
  Tape& tape = SameTape({a, b});
  const Tensor& A = a.value();
  const Tensor& B = b.value();
  if (A.rank() != 2 || B.rank() != 2 || A.dim(1) != B.dim(0)) {
    ShapeMismatch("matmul", A.shape(), B.shape());
  }
  const int m = A.dim(0), k = A.dim(1), n = B.dim(1);
  Tensor y({m, n});
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      const double aip = A.at(i, p);
      for (int j = 0; j < n; ++j) y.at(i, j) += aip * B.at(p, j);
    }
  }
  const int ia = a.id(), ib = b.id();
  return tape.Record("matmul", std::move(y), {ia, ib},
                     [ia, ib, m, k, n](Tape& t, int self) {
                       const Tensor& A = t.value(ia);
                       const Tensor& B = t.value(ib);
                       const Tensor& gy = t.upstream(self);
                       Tensor& ga = t.AccumulateGrad(ia);
                       Tensor& gb = t.AccumulateGrad(ib);
                       for (int i = 0; i < m; ++i) {
                         for (int p = 0; p < k; ++p) {
                           double acc = 0.0;
                           for (int j = 0; j < n; ++j) {
                             acc += gy.at(i, j) * B.at(p, j);
                             gb.at(p, j) += A.at(i, p) * gy.at(i, j);
                           }
                           ga.at(i, p) += acc;
                         }
                       }
                     });
}

Var Transpose(Var a) {
  Tape& tape = SameTape({a});
  RequireRank("transpose", a, 2);
  const Tensor& A = a.value();
  const int m = A.dim(0), n = A.dim(1);
  Tensor y({n, m});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) y.at(j, i) = A.at(i, j);
  }
  const int ia = a.id();
  return tape.Record("transpose", std::move(y), {ia},
                     [ia, m, n](Tape& t, int self) {
                       const Tensor& gy = t.upstream(self);
                       Tensor& ga = t.AccumulateGrad(ia);
                       for (int i = 0; i < m; ++i) {
                         for (int j = 0; j < n; ++j) ga.at(i, j) += gy.at(j, i);
                       }
                     });
}

Var Add(Var a, Var b) {
  Tape& tape = SameTape({a, b});
  if (a.shape() != b.shape()) ShapeMismatch("add", a.shape(), b.shape());
  Tensor y = a.value();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += b.value()[i];
  const int ia = a.id(), ib = b.id();
  return tape.Record("add", std::move(y), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Tensor& gy = t.upstream(self);
    Tensor& ga = t.AccumulateGrad(ia);
    for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += gy[i];
    Tensor& gb = t.AccumulateGrad(ib);
    for (std::size_t i = 0; i < gy.size(); ++i) gb[i] += gy[i];
  });
}

Var Sub(Var a, Var b) {
  Tape& tape = SameTape({a, b});
  if (a.shape() != b.shape()) ShapeMismatch("sub", a.shape(), b.shape());
  Tensor y = a.value();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= b.value()[i];
  const int ia = a.id(), ib = b.id();
  return tape.Record("sub", std::move(y), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Tensor& gy = t.upstream(self);
    Tensor& ga = t.AccumulateGrad(ia);
    for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += gy[i];
    Tensor& gb = t.AccumulateGrad(ib);
    for (std::size_t i = 0; i < gy.size(); ++i) gb[i] -= gy[i];
  });
}

Var Mul(Var a, Var b) {
  Tape& tape = SameTape({a, b});
  if (a.shape() != b.shape()) ShapeMismatch("mul", a.shape(), b.shape());
  Tensor y = a.value();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= b.value()[i];
  const int ia = a.id(), ib = b.id();
  return tape.Record("mul", std::move(y), {ia, ib}, [ia, ib](Tape& t, int self) {
    const Tensor& A = t.value(ia);
    const Tensor& B = t.value(ib);
    const Tensor& gy = t.upstream(self);
    Tensor& ga = t.AccumulateGrad(ia);
    for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += gy[i] * B[i];
    Tensor& gb = t.AccumulateGrad(ib);
    for (std::size_t i = 0; i < gy.size(); ++i) gb[i] += gy[i] * A[i];
  });
}

Var Scale(Var a, double factor) {
  return Unary(
      "scale", a, [factor](double x) { return factor * x; },
      [factor](double, double) { return factor; });
}

Var Exp(Var a) {
  return Unary(
      "exp", a, [](double x) { return std::exp(x); },
      [](double, double y) { return y; });
}

Var Reciprocal(Var a) {
  return Unary(
      "reciprocal", a, [](double x) { return 1.0 / x; },
      [](double, double y) { return -y * y; });
}

Var Concat(std::span<const Var> parts) {
  if (parts.empty()) throw ContractError("concat of nothing");
  Tape& tape = SameTape({parts[0]});
  std::vector<int> ids;
  std::vector<double> data;
  for (const Var& p : parts) {
    SameTape({parts[0], p});
    RequireRank("concat", p, 1);
    ids.push_back(p.id());
    data.insert(data.end(), p.value().vec().begin(), p.value().vec().end());
  }
  Tensor y = Tensor::Vector(std::move(data));
  return tape.Record("concat", std::move(y), ids, [ids](Tape& t, int self) {
    const Tensor& gy = t.upstream(self);
    std::size_t offset = 0;
    for (int id : ids) {
      Tensor& g = t.AccumulateGrad(id);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += gy[offset + i];
      offset += g.size();
    }
  });
}

Var Stack(std::span<const Var> rows) {
  if (rows.empty()) throw ContractError("stack of nothing");
  Tape& tape = SameTape({rows[0]});
  const Shape row_shape = rows[0].shape();
  if (row_shape.size() != 1) {
    throw ContractError("stack: rows must be rank 1, got " +
                        ShapeString(row_shape));
  }
  std::vector<int> ids;
  std::vector<double> data;
  for (const Var& r : rows) {
    SameTape({rows[0], r});
    if (r.shape() != row_shape) ShapeMismatch("stack", row_shape, r.shape());
    ids.push_back(r.id());
    data.insert(data.end(), r.value().vec().begin(), r.value().vec().end());
  }
  Tensor y({static_cast<int>(rows.size()), row_shape[0]}, std::move(data));
  const int n = row_shape[0];
  return tape.Record("stack", std::move(y), ids, [ids, n](Tape& t, int self) {
    const Tensor& gy = t.upstream(self);
    for (std::size_t r = 0; r < ids.size(); ++r) {
      Tensor& g = t.AccumulateGrad(ids[r]);
      for (int i = 0; i < n; ++i) g[i] += gy[r * n + i];
    }
  });
}

Var Row(Var a, int i) {
  Tape& tape = SameTape({a});
  RequireRank("row", a, 2);
  const Tensor& A = a.value();
  if (i < 0 || i >= A.dim(0)) {
    throw ContractError("row " + std::to_string(i) + " of " +
                        ShapeString(A.shape()));
  }
  const int n = A.dim(1);
  std::vector<double> data(A.data().begin() + std::size_t(i) * n,
                           A.data().begin() + std::size_t(i + 1) * n);
  const int ia = a.id();
  return tape.Record("row", Tensor::Vector(std::move(data)), {ia},
                     [ia, i, n](Tape& t, int self) {
                       const Tensor& gy = t.upstream(self);
                       Tensor& ga = t.AccumulateGrad(ia);
                       for (int j = 0; j < n; ++j) ga[std::size_t(i) * n + j] += gy[j];
                     });
}

Var Slice(Var a, int begin, int len) {
  Tape& tape = SameTape({a});
  RequireRank("slice", a, 1);
  if (begin < 0 || len < 0 || begin + len > a.value().dim(0)) {
    throw ContractError("slice [" + std::to_string(begin) + ", +" +
                        std::to_string(len) + ") of " +
                        ShapeString(a.shape()));
  }
  std::vector<double> data(a.value().data().begin() + begin,
                           a.value().data().begin() + begin + len);
  const int ia = a.id();
  return tape.Record("slice", Tensor::Vector(std::move(data)), {ia},
                     [ia, begin, len](Tape& t, int self) {
                       const Tensor& gy = t.upstream(self);
                       Tensor& ga = t.AccumulateGrad(ia);
                       for (int j = 0; j < len; ++j) ga[begin + j] += gy[j];
                     });
}

Var Sigmoid(Var a) {
  return Unary(
      "sigmoid", a,
      [](double x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Var Tanh(Var a) {
  return Unary(
      "tanh", a, [](double x) { return std::tanh(x); },
      [](double, double y) { return 1.0 - y * y; });
}

Var Gelu(Var a) {
  return Unary(
      "gelu", a,
      [](double x) { return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2)); },
      [](double x, double) {
        const double cdf = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2));
        const double pdf = std::exp(-0.5 * x * x) /
                           std::sqrt(2.0 * std::numbers::pi);
        return cdf + x * pdf;
      });
}

Var Softmax(Var a, int axis) {
  Tape& tape = SameTape({a});
  const Tensor& x = a.value();
  const AxisGroups g = GroupsFor(x, axis, "softmax");
  Tensor y(x.shape());
  for (int grp = 0; grp < g.groups; ++grp) {
    const std::size_t base = std::size_t(grp) * g.advance;
    double mx = x[base];
    for (int i = 1; i < g.length; ++i) {
      mx = std::max(mx, x[base + std::size_t(i) * g.stride]);
    }
    double sum = 0.0;
    for (int i = 0; i < g.length; ++i) {
      const std::size_t k = base + std::size_t(i) * g.stride;
      y[k] = std::exp(x[k] - mx);
      sum += y[k];
    }
    for (int i = 0; i < g.length; ++i) y[base + std::size_t(i) * g.stride] /= sum;
  }
  const int ia = a.id();
  return tape.Record("softmax", std::move(y), {ia}, [ia, g](Tape& t, int self) {
    const Tensor& y = t.value(self);
    const Tensor& gy = t.upstream(self);
    Tensor& gx = t.AccumulateGrad(ia);
    for (int grp = 0; grp < g.groups; ++grp) {
      const std::size_t base = std::size_t(grp) * g.advance;
      double dot = 0.0;
      for (int i = 0; i < g.length; ++i) {
        const std::size_t k = base + std::size_t(i) * g.stride;
        dot += gy[k] * y[k];
      }
      for (int i = 0; i < g.length; ++i) {
        const std::size_t k = base + std::size_t(i) * g.stride;
        gx[k] += y[k] * (gy[k] - dot);
      }
    }
  });
}

Var LayerNorm(Var a, double eps) {
  Tape& tape = SameTape({a});
  const Tensor& x = a.value();
  if (x.rank() < 1) throw ContractError("layer_norm of a scalar");
  const int n = x.shape().back();
  const int groups = static_cast<int>(x.size() / n);
  Tensor y(x.shape());
  std::vector<double> inv_std(groups);
  for (int grp = 0; grp < groups; ++grp) {
    const double* xr = x.data().data() + std::size_t(grp) * n;
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += xr[i];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) var += (xr[i] - mean) * (xr[i] - mean);
    var /= n;
    inv_std[grp] = 1.0 / std::sqrt(var + eps);
    for (int i = 0; i < n; ++i) {
      y[std::size_t(grp) * n + i] = (xr[i] - mean) * inv_std[grp];
    }
  }
  const int ia = a.id();
  return tape.Record(
      "layer_norm", std::move(y), {ia},
      [ia, n, groups, inv_std = std::move(inv_std)](Tape& t, int self) {
        const Tensor& y = t.value(self);
        const Tensor& gy = t.upstream(self);
        Tensor& gx = t.AccumulateGrad(ia);
        for (int grp = 0; grp < groups; ++grp) {
          const std::size_t base = std::size_t(grp) * n;
          double mean_g = 0.0, mean_gy = 0.0;
          for (int i = 0; i < n; ++i) {
            mean_g += gy[base + i];
            mean_gy += gy[base + i] * y[base + i];
          }
          mean_g /= n;
          mean_gy /= n;
          for (int i = 0; i < n; ++i) {
            gx[base + i] +=
                inv_std[grp] * (gy[base + i] - mean_g - y[base + i] * mean_gy);
          }
        }
      });
}

Var MeanPool(Var a, int axis) {
  Tape& tape = SameTape({a});
  RequireRank("mean_pool", a, 2);
  const Tensor& x = a.value();
  const int m = x.dim(0), n = x.dim(1);
  if (axis != 0 && axis != 1) {
    throw ContractError("mean_pool: axis must be 0 or 1");
  }
  Tensor y({axis == 0 ? n : m});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) y[axis == 0 ? j : i] += x.at(i, j);
  }
  const double inv = 1.0 / (axis == 0 ? m : n);
  for (std::size_t k = 0; k < y.size(); ++k) y[k] *= inv;
  const int ia = a.id();
  return tape.Record("mean_pool", std::move(y), {ia},
                     [ia, axis, m, n, inv](Tape& t, int self) {
                       const Tensor& gy = t.upstream(self);
                       Tensor& gx = t.AccumulateGrad(ia);
                       for (int i = 0; i < m; ++i) {
                         for (int j = 0; j < n; ++j) {
                           gx.at(i, j) += gy[axis == 0 ? j : i] * inv;
                         }
                       }
                     });
}

Var Sum(Var a) {
  Tape& tape = SameTape({a});
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  const int ia = a.id();
  return tape.Record("sum", Tensor::Scalar(s), {ia}, [ia](Tape& t, int self) {
    const double g = t.upstream(self)[0];
    Tensor& gx = t.AccumulateGrad(ia);
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] += g;
  });
}

Var Mse(Var pred, Var target) {
  Tape& tape = SameTape({pred, target});
  if (pred.shape() != target.shape()) {
    ShapeMismatch("mse", pred.shape(), target.shape());
  }
  const Tensor& p = pred.value();
  const Tensor& q = target.value();
  if (p.size() == 0) throw ContractError("mse of empty tensors");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
  const double n = static_cast<double>(p.size());
  const int ip = pred.id(), iq = target.id();
  return tape.Record("mse", Tensor::Scalar(s / n), {ip, iq},
                     [ip, iq, n](Tape& t, int self) {
                       const double g = t.upstream(self)[0];
                       const Tensor& p = t.value(ip);
                       const Tensor& q = t.value(iq);
                       Tensor& gp = t.AccumulateGrad(ip);
                       Tensor& gq = t.AccumulateGrad(iq);
                       for (std::size_t i = 0; i < p.size(); ++i) {
                         const double d = 2.0 * g * (p[i] - q[i]) / n;
                         gp[i] += d;
                         gq[i] -= d;
                       }
                     });
}

}  // namespace qfc::ad
