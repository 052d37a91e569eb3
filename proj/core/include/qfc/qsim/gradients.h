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
#ifndef QFC_QSIM_GRADIENTS_H_
#define QFC_QSIM_GRADIENTS_H_

#include <span>
#include <vector>

#include "qfc/qsim/circuit.h"

namespace qfc::qsim {

struct CircuitGradient {
  std::vector<double> d_params;
  std::vector<double> d_inputs;
};

// Vector-Jacobian product of `upstream` (one entry per measured wire) with
// the measured <Z> values, by a single reverse sweep over the gate list.
// Input gradients include the angle transforms and, for amplitude
// preparation, the normalization Jacobian (I - x̂x̂ᵀ)/||x||.
CircuitGradient AdjointVjp(const CircuitTemplate& tpl,
                           std::span<const double> params,
                           std::span<const double> inputs,
                           std::span<const double> upstream);

// d<Z_wire>/d(params) by the two-term shift rule. A slot bound to several
// gates sums the per-gate shift contributions.
// Throws UnsupportedGateError if a trainable angle sits on a non-rotation
// gate or goes through a non-identity transform.
std::vector<double> ParamShiftGrad(const CircuitTemplate& tpl,
                                   std::span<const double> params,
                                   std::span<const double> inputs, int wire);

// Shift-rule gradient of sum_k upstream[k] <Z_{measured_wires[k]}>.
std::vector<double> ParamShiftVjp(const CircuitTemplate& tpl,
                                  std::span<const double> params,
                                  std::span<const double> inputs,
                                  std::span<const double> upstream);

}  // namespace qfc::qsim

#endif  // QFC_QSIM_GRADIENTS_H_
