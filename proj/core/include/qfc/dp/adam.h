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
#ifndef QFC_DP_ADAM_H_
#define QFC_DP_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

namespace qfc::dp {

struct AdamState {
  explicit AdamState(std::size_t dim, double lr = 1e-3);

  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// One bias-corrected Adam update of `params` in place.
void AdamStep(AdamState& state, std::span<double> params,
              std::span<const double> grad);

}  // namespace qfc::dp

#endif  // QFC_DP_ADAM_H_
