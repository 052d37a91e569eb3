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
#include "qfc/autodiff/quantum_op.h"

#include <memory>

#include "qfc/autodiff/ops.h"
#include "qfc/errors.h"
#include "qfc/qsim/gradients.h"
#include "qfc/qsim/simulator.h"

namespace qfc::ad {
namespace {

Var Apply(std::shared_ptr<const qsim::CircuitTemplate> tpl, Var params,
          Var inputs) {
  Tape* tape = params.tape();
  if (tape == nullptr || inputs.tape() != tape) {
    throw ContractError("quantum_apply: operands live on different tapes");
  }
  if (params.value().rank() != 1 || inputs.value().rank() != 1) {
    throw ContractError("quantum_apply: params " +
                        ShapeString(params.shape()) + " and inputs " +
                        ShapeString(inputs.shape()) + " must be rank 1");
  }
  std::vector<double> z =
      qsim::Measure(*tpl, params.value().data(), inputs.value().data());
  const int ip = params.id(), ix = inputs.id();
  return tape->Record(
      "quantum", Tensor::Vector(std::move(z)), {ip, ix},
      [tpl, ip, ix](Tape& t, int self) {
        const qsim::CircuitGradient g =
            qsim::AdjointVjp(*tpl, t.value(ip).data(), t.value(ix).data(),
                             t.upstream(self).data());
        Tensor& gp = t.AccumulateGrad(ip);
        for (std::size_t i = 0; i < g.d_params.size(); ++i) gp[i] += g.d_params[i];
        Tensor& gx = t.AccumulateGrad(ix);
        for (std::size_t i = 0; i < g.d_inputs.size(); ++i) gx[i] += g.d_inputs[i];
      });
}

}  // namespace

Var QuantumApply(const qsim::CircuitTemplate& tpl, Var params, Var inputs) {
  // Non-owning alias; the caller keeps tpl alive for the tape's lifetime.
  return Apply(std::shared_ptr<const qsim::CircuitTemplate>(
                   std::shared_ptr<const qsim::CircuitTemplate>(), &tpl),
               params, inputs);
}

Var QuantumApply(const qsim::CircuitTemplate& ansatz, Var params, Var inputs,
                 const qsim::EncodingSpec& encoding) {
  qsim::CircuitTemplate tpl = qsim::WithEncoding(encoding, ansatz);
  if (encoding.kind == qsim::EncodingKind::kAmplitude) {
    tpl.n_inputs = static_cast<int>(inputs.value().size());
  }
  return Apply(std::make_shared<const qsim::CircuitTemplate>(std::move(tpl)),
               params, inputs);
}

}  // namespace qfc::ad
