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
#include "qfc/models/config.h"

#include <algorithm>

#include "qfc/errors.h"
#include "qfc/qsim/circuit.h"

namespace qfc::models {

std::string ToString(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLstm:
      return "lstm";
    case ModelKind::kQlstm:
      return "qlstm";
    case ModelKind::kQasa:
      return "qasa";
    case ModelKind::kQrwkv:
      return "qrwkv";
  }
  return "?";
}

ModelKind ParseModelKind(const std::string& name) {
  if (name == "lstm") return ModelKind::kLstm;
  if (name == "qlstm") return ModelKind::kQlstm;
  if (name == "qasa") return ModelKind::kQasa;
  if (name == "qrwkv") return ModelKind::kQrwkv;
  throw ConfigError("unknown model '" + name + "'");
}

ModelConfig ModelConfig::Paper(ModelKind kind) {
  ModelConfig c;
  c.kind = kind;
  return c;
}

ModelConfig ModelConfig::Tiny(ModelKind kind) {
  ModelConfig c;
  c.kind = kind;
  c.seq_len = 3;
  c.n_features = 2;
  c.lstm_hidden = 2;
  c.lstm_layers = 2;
  c.qlstm_hidden = 2;
  c.qlstm_blocks = 1;
  c.qasa_qubits = 2;
  c.qasa_d_model = 4;
  c.qasa_layers = 1;
  c.qasa_head_width = 3;
  c.qrwkv_qubits = 2;
  c.qrwkv_d = 2;
  c.qrwkv_layers = 1;
  return c;
}

int ModelConfig::QubitCount() const {
  switch (kind) {
    case ModelKind::kLstm:
      return 0;
    case ModelKind::kQlstm:
      return n_features + qlstm_hidden;
    case ModelKind::kQasa:
      return qasa_qubits;
    case ModelKind::kQrwkv:
      return qrwkv_qubits;
  }
  return 0;
}

void ModelConfig::Validate() const {
  auto positive = [](int v, const char* what) {
    if (v < 1) throw ConfigError(std::string(what) + " must be positive");
  };
  positive(seq_len, "seq_len");
  positive(n_features, "n_features");
  switch (kind) {
    case ModelKind::kLstm:
      positive(lstm_hidden, "lstm_hidden");
      positive(lstm_layers, "lstm_layers");
      break;
    case ModelKind::kQlstm:
      positive(qlstm_hidden, "qlstm_hidden");
      positive(qlstm_blocks, "qlstm_blocks");
      break;
    case ModelKind::kQasa:
      positive(qasa_d_model, "qasa_d_model");
      positive(qasa_layers, "qasa_layers");
      positive(qasa_head_width, "qasa_head_width");
      if (qasa_d_model > (1 << std::min(qasa_qubits, qsim::kMaxQubits))) {
        throw ConfigError("qasa_d_model exceeds 2^qasa_qubits amplitudes");
      }
      break;
    case ModelKind::kQrwkv:
      positive(qrwkv_d, "qrwkv_d");
      positive(qrwkv_layers, "qrwkv_layers");
      break;
  }
  if (kind != ModelKind::kLstm) {
    const int q = QubitCount();
    if (q < 1 || q > qsim::kMaxQubits) {
      throw ConfigError("circuit needs " + std::to_string(q) +
                        " qubits; supported range is [1, " +
                        std::to_string(qsim::kMaxQubits) + "]");
    }
  }
}

}  // namespace qfc::models
