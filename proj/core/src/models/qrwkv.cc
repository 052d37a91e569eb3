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

QrwkvForecaster::QrwkvForecaster(ModelConfig config)
    : Forecaster(std::move(config)) {
  const ModelConfig& c = this->config();
  const int d = c.qrwkv_d;
  const int nq = c.qrwkv_qubits;
  circuit_ = qsim::QrwkvCircuit(nq, c.qrwkv_layers);
  const auto W = InitKind::kUniformFanIn;
  const auto Z = InitKind::kZero;

  in_w_ = Register("qrwkv.in.w", {d, c.n_features}, W);
  in_b_ = Register("qrwkv.in.b", {d}, Z);
  proj_w_ = Register("qrwkv.proj.w", {nq, d}, W);
  proj_b_ = Register("qrwkv.proj.b", {nq}, Z);
  vqc_ = Register("qrwkv.vqc", {circuit_.n_trainable}, InitKind::kRotation);
  q_w_ = Register("qrwkv.q.w", {d, nq}, W);
  q_b_ = Register("qrwkv.q.b", {d}, Z);
  k_w_ = Register("qrwkv.k.w", {d, nq}, W);
  k_b_ = Register("qrwkv.k.b", {d}, Z);
  v_w_ = Register("qrwkv.v.w", {d, nq}, W);
  v_b_ = Register("qrwkv.v.b", {d}, Z);

  wk_ = Register("qrwkv.time.wk", {d, d}, W);
  wv_ = Register("qrwkv.time.wv", {d, d}, W);
  tau_ = Register("qrwkv.time.tau", {d}, InitKind::kDecayTau);
  wr_ = Register("qrwkv.time.wr", {d, 2 * d}, W);
  br_ = Register("qrwkv.time.br", {d}, Z);

  mlp_w_ = Register("qrwkv.chan.mlp.w", {d, d}, W);
  mlp_b_ = Register("qrwkv.chan.mlp.b", {d}, Z);
  w1_ = Register("qrwkv.chan.w1", {d, nq}, W);
  w2_ = Register("qrwkv.chan.w2", {d, d}, W);
  b1_ = Register("qrwkv.chan.b1", {d}, Z);
  w3_ = Register("qrwkv.chan.w3", {d, d}, W);
  b2_ = Register("qrwkv.chan.b2", {d}, Z);

  ln1_gain_ = Register("qrwkv.ln1.gain", {d}, InitKind::kOne);
  ln1_bias_ = Register("qrwkv.ln1.bias", {d}, Z);
  ln2_gain_ = Register("qrwkv.ln2.gain", {d}, InitKind::kOne);
  ln2_bias_ = Register("qrwkv.ln2.bias", {d}, Z);

  head_w_ = Register("head.w", {1, d}, W);
  head_b_ = Register("head.b", {1}, Z);
}

ad::Var QrwkvForecaster::Forward(ad::Tape& tape,
                                 std::span<const ad::Var> params,
                                 const ad::Tensor& window, Trace* trace) const {
  CheckWindow(window);
  const int d = config().qrwkv_d;
  const ad::Var x_all = tape.Leaf(window);
  // λ = exp(-Δt/τ) with Δt = 1 step.
  const ad::Var decay = ad::Exp(ad::Scale(ad::Reciprocal(params[tau_]), -1.0));

  ad::Var m = tape.Leaf(ad::Tensor({d}));
  ad::Var h_prev = tape.Leaf(ad::Tensor({d}));
  std::vector<ad::Var> keys, values;
  ad::Var y;
  for (int t = 0; t < config().seq_len; ++t) {
    const ad::Var x = ad::Affine(params[in_w_], ad::Row(x_all, t), params[in_b_]);

    // Quantum embedding and the q/k/v heads read from it.
    const ad::Var angles = ad::Affine(params[proj_w_], x, params[proj_b_]);
    const ad::Var qemb = ad::QuantumApply(circuit_, params[vqc_], angles);
    const ad::Var q = ad::Affine(params[q_w_], qemb, params[q_b_]);
    keys.push_back(ad::Affine(params[k_w_], qemb, params[k_b_]));
    values.push_back(ad::Affine(params[v_w_], qemb, params[v_b_]));

    // Time mixing.
    const ad::Var u = ad::Linear(params[wk_], x);
    const ad::Var v = ad::Linear(params[wv_], x);
    const ad::Var xm[2] = {x, m};
    const ad::Var r = ad::Sigmoid(ad::Affine(params[wr_], ad::Concat(xm), params[br_]));
    m = ad::Add(ad::Mul(decay, m), v);
    const ad::Var y_time = ad::Mul(r, ad::Mul(u, m));

    // Channel mixing.
    const ad::Var mlp = ad::Gelu(ad::Affine(params[mlp_w_], x, params[mlp_b_]));
    const ad::Var z = ad::Add(ad::Linear(params[w1_], qemb),
                              ad::Affine(params[w2_], mlp, params[b1_]));
    const ad::Var h = ad::Gelu(z);
    const ad::Var c = ad::Affine(params[w3_], ad::Mul(h, h_prev), params[b2_]);
    h_prev = h;

    // Causal attention over keys and values seen so far.
    const ad::Var scores = ad::Linear(ad::Stack(keys), q);
    const ad::Var alpha = ad::Softmax(scores, 0);
    const ad::Var y_attn = ad::Linear(ad::Transpose(ad::Stack(values)), alpha);

    const ad::Var h1 = ad::Add(
        ad::Mul(ad::LayerNorm(ad::Add(x, y_time)), params[ln1_gain_]),
        params[ln1_bias_]);
    y = ad::Add(ad::Mul(ad::LayerNorm(ad::Add(ad::Add(h1, c), y_attn)),
                        params[ln2_gain_]),
                params[ln2_bias_]);
    if (trace) {
      (*trace)["m"].push_back(m.value());
      (*trace)["alpha"].push_back(alpha.value());
      (*trace)["y_attn"].push_back(y_attn.value());
      (*trace)["y_time"].push_back(y_time.value());
      (*trace)["y"].push_back(y.value());
    }
  }
  return ad::Affine(params[head_w_], y, params[head_b_]);
}

}  // namespace qfc::models
