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
#ifndef QFC_QSIM_CIRCUIT_IO_H_
#define QFC_QSIM_CIRCUIT_IO_H_

#include <string>
#include <vector>

#include "qfc/qsim/circuit.h"

namespace qfc::qsim {

// A circuit plus the values to bind, as read by the `simulate` subcommand.
struct CircuitProgram {
  CircuitTemplate tpl;
  std::vector<double> params;
  std::vector<double> inputs;
};

// Parses the JSON circuit description:
//
//   {
//     "n_qubits": 2,
//     "prep": "zero" | "amplitude",          (optional, default "zero")
//     "encoding": "qlstm-angle" | "rx-angle", (optional gate prefix)
//     "gates": [
//       {"gate": "H", "target": 0},
//       {"gate": "RY", "target": 0, "param": 0},
//       {"gate": "RZ", "target": 1, "angle": 0.25},
//       {"gate": "RX", "target": 1, "input": 0, "transform": "arctan"},
//       {"gate": "CNOT", "control": 0, "target": 1}
//     ],
//     "measure": [0, 1],          (optional, default all wires)
//     "params": [0.5],
//     "inputs": [1.0]
//   }
//
// n_trainable and n_inputs are inferred from the largest referenced slot
// (or from "inputs" for amplitude preparation). Throws ConfigError.
CircuitProgram ParseCircuitProgram(const std::string& json_text);

}  // namespace qfc::qsim

#endif  // QFC_QSIM_CIRCUIT_IO_H_
