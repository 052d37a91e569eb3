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
#ifndef QFC_MODELS_CONFIG_H_
#define QFC_MODELS_CONFIG_H_

#include <cstdint>
#include <string>

namespace qfc::models {

enum class ModelKind { kLstm, kQlstm, kQasa, kQrwkv };

std::string ToString(ModelKind kind);
// Accepts "lstm", "qlstm", "qasa", "qrwkv". Throws ConfigError.
ModelKind ParseModelKind(const std::string& name);

struct ModelConfig {
  ModelKind kind = ModelKind::kLstm;
  int seq_len = 16;
  int n_features = 7;
  std::uint64_t seed = 0;

  // Classical stacked LSTM.
  int lstm_hidden = 64;
  int lstm_layers = 2;

  // QLSTM: each gate circuit has n_features + qlstm_hidden qubits and
  // measures the first qlstm_hidden wires.
  int qlstm_hidden = 4;
  int qlstm_blocks = 5;

  // QASA: tokens embedded to qasa_d_model values, amplitude-encoded on
  // qasa_qubits qubits.
  int qasa_qubits = 9;
  int qasa_d_model = 16;
  int qasa_layers = 2;
  int qasa_head_width = 32;

  // QRWKV: model width qrwkv_d, circuit on qrwkv_qubits qubits.
  int qrwkv_qubits = 4;
  int qrwkv_d = 8;
  int qrwkv_layers = 2;

  // Desk-scale defaults mirroring the published setup.
  static ModelConfig Paper(ModelKind kind);
  // Smallest configuration of each family, for gradient checks.
  static ModelConfig Tiny(ModelKind kind);

  // Qubits per circuit; 0 for the classical LSTM.
  int QubitCount() const;

  // Throws ConfigError.
  void Validate() const;
};

}  // namespace qfc::models

#endif  // QFC_MODELS_CONFIG_H_
