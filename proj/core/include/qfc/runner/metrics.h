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
#ifndef QFC_RUNNER_METRICS_H_
#define QFC_RUNNER_METRICS_H_

#include <span>

namespace qfc::runner {

struct Metrics {
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
};

// Throws ContractError on empty or mismatched inputs.
Metrics ComputeMetrics(std::span<const double> pred,
                       std::span<const double> target);

// |a - b| / max(|a|, |b|, floor).
double RelativeError(double a, double b, double floor = 1e-6);

}  // namespace qfc::runner

#endif  // QFC_RUNNER_METRICS_H_
