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
#ifndef QFC_QSIM_SIMULATOR_H_
#define QFC_QSIM_SIMULATOR_H_

#include <span>
#include <vector>

#include "qfc/qsim/circuit.h"

namespace qfc::qsim {

// Applies one gate in place. `angle` is the resolved rotation in radians and
// is ignored for H and CNOT. Throws NumericError for a non-finite angle and
// ConfigError for invalid wires.
void ApplyGate(Statevector& state, const GateOp& gate, double angle = 0.0);

// Applies the inverse of `gate` in place.
void ApplyGateAdjoint(Statevector& state, const GateOp& gate, double angle);

// Gate prefix realizing an angle encoding; input slot j feeds wire j.
// Amplitude encoding has no gate form and yields an empty list.
std::vector<GateOp> EncodingGates(const EncodingSpec& spec);

// x/||x|| written into the first dim(x) amplitudes of an n-qubit register.
// Throws DegenerateInputError when ||x|| < kMinAmplitudeNorm.
Statevector AmplitudeEncode(std::span<const double> x, int n_qubits);

Statevector Encode(const EncodingSpec& spec, std::span<const double> x);

// Prepends `spec`'s encoding to `ansatz` and sets n_inputs accordingly.
// The ansatz must not itself reference inputs.
CircuitTemplate WithEncoding(const EncodingSpec& spec,
                             const CircuitTemplate& ansatz);

double ResolveAngle(const AngleBinding& binding, std::span<const double> params,
                    std::span<const double> inputs);

Statevector RunCircuit(const CircuitTemplate& tpl,
                       std::span<const double> params,
                       std::span<const double> inputs);

// out[k] = <Z> on wires[k].
std::vector<double> ExpectZ(const Statevector& state,
                            std::span<const int> wires);

// expect_z(run_circuit(...), tpl.measured_wires)
std::vector<double> Measure(const CircuitTemplate& tpl,
                            std::span<const double> params,
                            std::span<const double> inputs);

}  // namespace qfc::qsim

#endif  // QFC_QSIM_SIMULATOR_H_
