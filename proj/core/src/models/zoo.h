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
#ifndef QFC_SRC_MODELS_ZOO_H_
#define QFC_SRC_MODELS_ZOO_H_

#include <vector>

#include "qfc/models/forecaster.h"
#include "qfc/qsim/circuit.h"

namespace qfc::models {

class LstmForecaster final : public Forecaster {
 public:
  explicit LstmForecaster(ModelConfig config);
  ad::Var Forward(ad::Tape& tape, std::span<const ad::Var> params,
                  const ad::Tensor& window, Trace* trace) const override;

 private:
  struct Layer {
    int w_ih, w_hh, b;
  };
  std::vector<Layer> layers_;
  int head_w_, head_b_;
};

class QlstmForecaster final : public Forecaster {
 public:
  explicit QlstmForecaster(ModelConfig config);
  ad::Var Forward(ad::Tape& tape, std::span<const ad::Var> params,
                  const ad::Tensor& window, Trace* trace) const override;

 private:
  struct Gate {
    int nn_w, nn_b, qnn;
  };
  qsim::CircuitTemplate circuit_;
  Gate gates_[4];  // forget, input, output, candidate
  int head_w_, head_b_;
};

class QasaForecaster final : public Forecaster {
 public:
  explicit QasaForecaster(ModelConfig config);
  ad::Var Forward(ad::Tape& tape, std::span<const ad::Var> params,
                  const ad::Tensor& window, Trace* trace) const override;

 private:
  qsim::CircuitTemplate circuit_;
  int embed_w_, embed_b_;
  int vqc_q_, vqc_k_, vqc_v_;
  int head_w1_, head_b1_, head_w2_, head_b2_;
};

class QrwkvForecaster final : public Forecaster {
 public:
  explicit QrwkvForecaster(ModelConfig config);
  ad::Var Forward(ad::Tape& tape, std::span<const ad::Var> params,
                  const ad::Tensor& window, Trace* trace) const override;

 private:
  qsim::CircuitTemplate circuit_;
  int in_w_, in_b_, proj_w_, proj_b_, vqc_;
  int q_w_, q_b_, k_w_, k_b_, v_w_, v_b_;
  int wk_, wv_, tau_, wr_, br_;
  int mlp_w_, mlp_b_, w1_, w2_, b1_, w3_, b2_;
  int ln1_gain_, ln1_bias_, ln2_gain_, ln2_bias_;
  int head_w_, head_b_;
};

}  // namespace qfc::models

#endif  // QFC_SRC_MODELS_ZOO_H_
