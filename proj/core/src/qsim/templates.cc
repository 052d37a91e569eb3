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
#include "qfc/qsim/templates.h"

#include "qfc/errors.h"
#include "qfc/qsim/simulator.h"

namespace qfc::qsim {
namespace {

void MeasureFirst(CircuitTemplate& tpl, int count) {
  if (count < 1 || count > tpl.n_qubits) {
    throw ConfigError("cannot measure " + std::to_string(count) + " of " +
                      std::to_string(tpl.n_qubits) + " wires");
  }
  tpl.measured_wires.clear();
  for (int i = 0; i < count; ++i) tpl.measured_wires.push_back(i);
}

void CheckLayers(int layers) {
  if (layers < 1) throw ConfigError("ansatz needs at least one layer");
}

}  // namespace

void AppendRing(CircuitTemplate& tpl) {
  const int n = tpl.n_qubits;
  if (n < 2) return;
  for (int i = 0; i + 1 < n; ++i) tpl.gates.push_back(GateOp::CNOT(i, i + 1));
  tpl.gates.push_back(GateOp::CNOT(n - 1, 0));
}

void AppendBrick(CircuitTemplate& tpl) {
  const int n = tpl.n_qubits;
  for (int i = 0; i + 1 < n; i += 2) tpl.gates.push_back(GateOp::CNOT(i, i + 1));
  for (int i = 1; i + 1 < n; i += 2) tpl.gates.push_back(GateOp::CNOT(i, i + 1));
}

CircuitTemplate RingRyAnsatz(int n_qubits, int layers) {
  CheckLayers(layers);
  CircuitTemplate tpl;
  tpl.n_qubits = n_qubits;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n_qubits; ++i) {
      tpl.gates.push_back(
          GateOp::RY(i, AngleBinding::Trainable(l * n_qubits + i)));
    }
    AppendRing(tpl);
  }
  tpl.n_trainable = layers * n_qubits;
  MeasureFirst(tpl, n_qubits);
  tpl.Validate();
  return tpl;
}

CircuitTemplate RyRzRingAnsatz(int n_qubits, int layers) {
  CheckLayers(layers);
  CircuitTemplate tpl;
  tpl.n_qubits = n_qubits;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n_qubits; ++i) {
      const int base = l * 2 * n_qubits + 2 * i;
      tpl.gates.push_back(GateOp::RY(i, AngleBinding::Trainable(base)));
      tpl.gates.push_back(GateOp::RZ(i, AngleBinding::Trainable(base + 1)));
    }
    AppendRing(tpl);
  }
  tpl.n_trainable = layers * 2 * n_qubits;
  MeasureFirst(tpl, n_qubits);
  tpl.Validate();
  return tpl;
}

CircuitTemplate BrickRyAnsatz(int n_qubits, int blocks, int n_measured) {
  CheckLayers(blocks);
  CircuitTemplate tpl;
  tpl.n_qubits = n_qubits;
  for (int b = 0; b < blocks; ++b) {
    AppendBrick(tpl);
    for (int i = 0; i < n_qubits; ++i) {
      tpl.gates.push_back(
          GateOp::RY(i, AngleBinding::Trainable(b * n_qubits + i)));
    }
  }
  tpl.n_trainable = blocks * n_qubits;
  MeasureFirst(tpl, n_measured);
  tpl.Validate();
  return tpl;
}

CircuitTemplate QasaCircuit(int n_qubits, int layers, int input_dim) {
  CircuitTemplate tpl = WithEncoding({EncodingKind::kAmplitude, n_qubits},
                                     RingRyAnsatz(n_qubits, layers));
  tpl.n_inputs = input_dim;
  tpl.Validate();
  return tpl;
}

CircuitTemplate QrwkvCircuit(int n_qubits, int layers) {
  return WithEncoding({EncodingKind::kRxAngle, n_qubits},
                      RyRzRingAnsatz(n_qubits, layers));
}

CircuitTemplate QlstmCircuit(int n_qubits, int blocks, int n_measured) {
  return WithEncoding({EncodingKind::kQlstmAngle, n_qubits},
                      BrickRyAnsatz(n_qubits, blocks, n_measured));
}

}  // namespace qfc::qsim
