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
#ifndef QFC_AUTODIFF_QUANTUM_OP_H_
#define QFC_AUTODIFF_QUANTUM_OP_H_

#include "qfc/autodiff/tape.h"
#include "qfc/qsim/circuit.h"

namespace qfc::ad {

// <Z> on tpl.measured_wires after running `tpl` with the given parameter
// and input vectors. Backward uses the adjoint sweep and reaches both
// params and inputs. `tpl` must outlive the tape.
Var QuantumApply(const qsim::CircuitTemplate& tpl, Var params, Var inputs);

// Same, with the encoding attached to an input-free ansatz on the fly. The
// composed template is owned by the tape node.
Var QuantumApply(const qsim::CircuitTemplate& ansatz, Var params, Var inputs,
                 const qsim::EncodingSpec& encoding);

}  // namespace qfc::ad

#endif  // QFC_AUTODIFF_QUANTUM_OP_H_
