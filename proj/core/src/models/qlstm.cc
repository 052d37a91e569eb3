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
#include "qfc/autodiff/quantum_op.h"
#include "qfc/qsim/templates.h"
#include "zoo.h"

namespace qfc::models {

namespace {
constexpr const char* kGateNames[4] = {"f", "i", "o", "g"};
}  // namespace

QlstmForecaster::QlstmForecaster(ModelConfig config)
    : Forecaster(std::move(config)) {
  const ModelConfig& c = this->config();
  const int q = c.QubitCount();
  circuit_ = qsim::QlstmCircuit(q, c.qlstm_blocks, c.qlstm_hidden);
  for (int g = 0; g < 4; ++g) {
    const std::string p = std::string("qlstm.") + kGateNames[g] + ".";
    gates_[g].nn_w = Register(p + "nn.w", {q, q}, InitKind::kUniformFanIn);
    gates_[g].nn_b = Register(p + "nn.b", {q}, InitKind::kZero);
    gates_[g].qnn = Register(p + "qnn", {circuit_.n_trainable}, InitKind::kRotation);
  }
  head_w_ = Register("head.w", {1, c.qlstm_hidden}, InitKind::kUniformFanIn);
  head_b_ = Register("head.b", {1}, InitKind::kZero);
}

ad::Var QlstmForecaster::Forward(ad::Tape& tape,
                                 std::span<const ad::Var> params,
                                 const ad::Tensor& window, Trace* trace) const {
  CheckWindow(window);
  const int hidden = config().qlstm_hidden;
  const ad::Var x_all = tape.Leaf(window);
  ad::Var h = tape.Leaf(ad::Tensor({hidden}));
  ad::Var c = tape.Leaf(ad::Tensor({hidden}));
  for (int t = 0; t < config().seq_len; ++t) {
    const ad::Var parts[2] = {ad::Row(x_all, t), h};
    const ad::Var v = ad::Concat(parts);
    ad::Var out[4];
    for (int g = 0; g < 4; ++g) {
      const ad::Var pre = ad::Affine(params[gates_[g].nn_w], v, params[gates_[g].nn_b]);
      const ad::Var z = ad::QuantumApply(circuit_, params[gates_[g].qnn], pre);
      out[g] = g == 3 ? ad::Tanh(z) : ad::Sigmoid(z);
    }
    const ad::Var& f = out[0];
    const ad::Var& i = out[1];
    const ad::Var& o = out[2];
    const ad::Var& g = out[3];
    c = ad::Add(ad::Mul(f, c), ad::Mul(i, g));
    const ad::Var tanh_c = ad::Tanh(c);
    h = ad::Mul(o, tanh_c);
    if (trace) {
      for (int k = 0; k < 4; ++k) (*trace)[kGateNames[k]].push_back(out[k].value());
      (*trace)["tanh_c"].push_back(tanh_c.value());
      (*trace)["c"].push_back(c.value());
      (*trace)["h"].push_back(h.value());
    }
  }
  return ad::Affine(params[head_w_], h, params[head_b_]);
}

}  // namespace qfc::models
