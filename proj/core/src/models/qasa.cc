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
#include <cmath>

#include "qfc/autodiff/ops.h"
#include "qfc/autodiff/quantum_op.h"
#include "qfc/qsim/templates.h"
#include "zoo.h"

namespace qfc::models {

QasaForecaster::QasaForecaster(ModelConfig config)
    : Forecaster(std::move(config)) {
  const ModelConfig& c = this->config();
  const int n = c.qasa_qubits;
  circuit_ = qsim::QasaCircuit(n, c.qasa_layers, c.qasa_d_model);
  embed_w_ = Register("qasa.embed.w", {c.qasa_d_model, c.n_features},
                      InitKind::kUniformFanIn);
  embed_b_ = Register("qasa.embed.b", {c.qasa_d_model}, InitKind::kZero);
  vqc_q_ = Register("qasa.vqc_q", {circuit_.n_trainable}, InitKind::kRotation);
  vqc_k_ = Register("qasa.vqc_k", {circuit_.n_trainable}, InitKind::kRotation);
  vqc_v_ = Register("qasa.vqc_v", {circuit_.n_trainable}, InitKind::kRotation);
  head_w1_ = Register("head.w1", {c.qasa_head_width, n}, InitKind::kUniformFanIn);
  head_b1_ = Register("head.b1", {c.qasa_head_width}, InitKind::kZero);
  head_w2_ = Register("head.w2", {1, c.qasa_head_width}, InitKind::kUniformFanIn);
  head_b2_ = Register("head.b2", {1}, InitKind::kZero);
}

ad::Var QasaForecaster::Forward(ad::Tape& tape, std::span<const ad::Var> params,
                                const ad::Tensor& window, Trace* trace) const {
  CheckWindow(window);
  const int steps = config().seq_len;
  const ad::Var embedded =
      ad::Affine(params[embed_w_], tape.Leaf(window), params[embed_b_]);
  std::vector<ad::Var> q, k, v;
  for (int t = 0; t < steps; ++t) {
    const ad::Var token = ad::Row(embedded, t);
    q.push_back(ad::QuantumApply(circuit_, params[vqc_q_], token));
    k.push_back(ad::QuantumApply(circuit_, params[vqc_k_], token));
    v.push_back(ad::QuantumApply(circuit_, params[vqc_v_], token));
  }
  const ad::Var Q = ad::Stack(q);
  const ad::Var K = ad::Stack(k);
  const ad::Var V = ad::Stack(v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(config().qasa_qubits));
  const ad::Var attention =
      ad::Softmax(ad::Scale(ad::MatMul(Q, ad::Transpose(K)), scale), 1);
  const ad::Var pooled = ad::MeanPool(ad::MatMul(attention, V), 0);
  const ad::Var hidden =
      ad::Gelu(ad::Affine(params[head_w1_], pooled, params[head_b1_]));
  if (trace) {
    (*trace)["q"].push_back(Q.value());
    (*trace)["k"].push_back(K.value());
    (*trace)["v"].push_back(V.value());
    (*trace)["attention"].push_back(attention.value());
    (*trace)["pooled"].push_back(pooled.value());
  }
  return ad::Affine(params[head_w2_], hidden, params[head_b2_]);
}

}  // namespace qfc::models
