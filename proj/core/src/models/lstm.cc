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
#include "zoo.h"

namespace qfc::models {

LstmForecaster::LstmForecaster(ModelConfig config)
    : Forecaster(std::move(config)) {
  const ModelConfig& c = this->config();
  const int h = c.lstm_hidden;
  int in = c.n_features;
  for (int l = 0; l < c.lstm_layers; ++l) {
    const std::string p = "lstm" + std::to_string(l) + ".";
    Layer layer;
    layer.w_ih = Register(p + "w_ih", {4 * h, in}, InitKind::kUniformFanIn);
    layer.w_hh = Register(p + "w_hh", {4 * h, h}, InitKind::kUniformFanIn);
    layer.b = Register(p + "b", {4 * h}, InitKind::kZero);
    layers_.push_back(layer);
    in = h;
  }
  head_w_ = Register("head.w", {1, h}, InitKind::kUniformFanIn);
  head_b_ = Register("head.b", {1}, InitKind::kZero);
}

// Gate rows are ordered input, forget, candidate, output.
ad::Var LstmForecaster::Forward(ad::Tape& tape, std::span<const ad::Var> params,
                                const ad::Tensor& window, Trace* trace) const {
  CheckWindow(window);
  const int h = config().lstm_hidden;
  const ad::Var x_all = tape.Leaf(window);
  std::vector<ad::Var> hs, cs;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    hs.push_back(tape.Leaf(ad::Tensor({h})));
    cs.push_back(tape.Leaf(ad::Tensor({h})));
  }
  for (int t = 0; t < config().seq_len; ++t) {
    ad::Var x = ad::Row(x_all, t);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      const Layer& L = layers_[l];
      const ad::Var z = ad::Add(ad::Affine(params[L.w_ih], x, params[L.b]),
                                ad::Linear(params[L.w_hh], hs[l]));
      const ad::Var i = ad::Sigmoid(ad::Slice(z, 0, h));
      const ad::Var f = ad::Sigmoid(ad::Slice(z, h, h));
      const ad::Var g = ad::Tanh(ad::Slice(z, 2 * h, h));
      const ad::Var o = ad::Sigmoid(ad::Slice(z, 3 * h, h));
      cs[l] = ad::Add(ad::Mul(f, cs[l]), ad::Mul(i, g));
      hs[l] = ad::Mul(o, ad::Tanh(cs[l]));
      x = hs[l];
    }
    if (trace) {
      (*trace)["h"].push_back(hs.back().value());
      (*trace)["c"].push_back(cs.back().value());
    }
  }
  return ad::Affine(params[head_w_], hs.back(), params[head_b_]);
}

}  // namespace qfc::models
