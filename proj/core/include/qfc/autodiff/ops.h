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
#ifndef QFC_AUTODIFF_OPS_H_
#define QFC_AUTODIFF_OPS_H_

#include <span>
#include <vector>

#include "qfc/autodiff/tape.h"

// Differentiable primitives. Every op checks shapes and throws ContractError
// naming both shapes on mismatch. All inputs must live on the same tape.
namespace qfc::ad {

inline constexpr double kLayerNormEps = 1e-5;

// W[out,in]·x + b. x is [in] (result [out]) or [n,in] (result [n,out], b
// added per row).
Var Affine(Var w, Var x, Var b);
// W[out,in]·x without bias.
Var Linear(Var w, Var x);

Var MatMul(Var a, Var b);  // [m,k]·[k,n]
Var Transpose(Var a);      // [m,n] -> [n,m]

Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);  // elementwise
Var Scale(Var a, double factor);
Var Exp(Var a);
Var Reciprocal(Var a);

// Rank-1 concatenation.
Var Concat(std::span<const Var> parts);
// Rank-1 tensors of equal length stacked as rows of a matrix.
Var Stack(std::span<const Var> rows);
// Row i of a matrix as a rank-1 tensor.
Var Row(Var a, int i);
// Elements [begin, begin+len) of a rank-1 tensor.
Var Slice(Var a, int begin, int len);

Var Sigmoid(Var a);
Var Tanh(Var a);
// Exact GELU: x·Φ(x).
Var Gelu(Var a);

// Softmax along `axis` of a rank-1 (axis 0) or rank-2 tensor, max-shifted.
Var Softmax(Var a, int axis = -1);
// Normalizes over the last axis: (x - mean)/sqrt(var + eps), population
// variance, no affine.
Var LayerNorm(Var a, double eps = kLayerNormEps);
// Mean over `axis` of a matrix.
Var MeanPool(Var a, int axis);
Var Sum(Var a);
// mean((pred - target)^2) as a scalar; shapes must match.
Var Mse(Var pred, Var target);

}  // namespace qfc::ad

#endif  // QFC_AUTODIFF_OPS_H_
