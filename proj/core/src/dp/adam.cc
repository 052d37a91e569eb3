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
#include "qfc/dp/adam.h"

#include <cmath>
#include <string>

#include "qfc/errors.h"

namespace qfc::dp {

AdamState::AdamState(std::size_t dim, double lr)
    : m(dim, 0.0), v(dim, 0.0), lr(lr) {}

void AdamStep(AdamState& state, std::span<double> params,
              std::span<const double> grad) {
  if (params.size() != state.m.size() || grad.size() != state.m.size()) {
    throw ContractError("adam: state dim " + std::to_string(state.m.size()) +
                        ", params " + std::to_string(params.size()) +
                        ", grad " + std::to_string(grad.size()));
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

}  // namespace qfc::dp
