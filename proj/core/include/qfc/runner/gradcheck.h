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
#ifndef QFC_RUNNER_GRADCHECK_H_
#define QFC_RUNNER_GRADCHECK_H_

#include <cstdint>
#include <vector>

#include "qfc/models/config.h"
#include "qfc/qsim/circuit.h"

namespace qfc::runner {

struct ErrorStats {
  std::size_t count = 0;
  double max_abs = 0.0;
  double max_rel = 0.0;
  double p99_rel = 0.0;
};

// Relative errors use RelativeError's default floor.
ErrorStats Summarize(const std::vector<double>& a, const std::vector<double>& b);

// The variational circuit used by a model family at the given size, with its
// encoding prepended. Throws ConfigError for the classical LSTM.
qsim::CircuitTemplate FamilyCircuit(const models::ModelConfig& config);

struct CircuitCheck {
  int instances = 0;
  ErrorStats adjoint_vs_shift;   // parameter gradients
  ErrorStats adjoint_vs_fd;      // parameter and input gradients
  ErrorStats shift_vs_fd;        // parameter gradients
};

// Random angles, inputs and upstream weights per instance.
CircuitCheck CheckCircuit(const qsim::CircuitTemplate& tpl, int instances,
                          std::uint64_t seed, double fd_step = 1e-3);

struct ModelCheck {
  std::size_t n_params = 0;
  ErrorStats backprop_vs_fd;
};

// Loss gradient of a random window and target against central differences
// over every parameter, for that many random windows.
ModelCheck CheckModel(const models::ModelConfig& config, int windows,
                      std::uint64_t seed, double fd_step = 1e-3);

}  // namespace qfc::runner

#endif  // QFC_RUNNER_GRADCHECK_H_
