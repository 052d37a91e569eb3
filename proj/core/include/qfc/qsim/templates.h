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
#ifndef QFC_QSIM_TEMPLATES_H_
#define QFC_QSIM_TEMPLATES_H_

#include "qfc/qsim/circuit.h"

// Circuit families used by the forecasting models. Every ansatz measures
// from the zero state; encodings are attached with WithEncoding.
namespace qfc::qsim {

// CNOT(i, i+1) for i = 0..n-2, then CNOT(n-1, 0). Nothing for n = 1; a
// single CNOT(0, 1) pair in both directions for n = 2.
void AppendRing(CircuitTemplate& tpl);

// Brick pattern: CNOT on pairs (0,1), (2,3), ... then (1,2), (3,4), ...
void AppendBrick(CircuitTemplate& tpl);

// Per layer: RY(slot l*n + i) on every wire, then the ring. Measures all wires.
CircuitTemplate RingRyAnsatz(int n_qubits, int layers);

// Per layer: on every wire RY(slot l*2n + 2i) then RZ(slot l*2n + 2i + 1),
// then the ring. Measures all wires.
CircuitTemplate RyRzRingAnsatz(int n_qubits, int layers);

// Per block: the brick, then RY(slot b*n + i) on every wire. Measures wires
// 0..n_measured-1.
CircuitTemplate BrickRyAnsatz(int n_qubits, int blocks, int n_measured);

// Amplitude-prepared RingRyAnsatz taking `input_dim` inputs.
CircuitTemplate QasaCircuit(int n_qubits, int layers, int input_dim);

// RX angle encoding followed by RyRzRingAnsatz.
CircuitTemplate QrwkvCircuit(int n_qubits, int layers);

// H / RY(arctan x) / RZ(arctan x²) encoding followed by BrickRyAnsatz.
CircuitTemplate QlstmCircuit(int n_qubits, int blocks, int n_measured);

}  // namespace qfc::qsim

#endif  // QFC_QSIM_TEMPLATES_H_
