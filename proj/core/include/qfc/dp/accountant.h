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
#ifndef QFC_DP_ACCOUNTANT_H_
#define QFC_DP_ACCOUNTANT_H_

#include <cstdint>
#include <span>
#include <vector>

namespace qfc::dp {

// Privacy loss of T Gaussian-mechanism steps at sampling rate β, converted
// from Rényi DP:
//
//   ε = min_{α>1} [ ln(1/δ)/(α-1) + α β² T / (2σ²) ]
//
// With A = ln(1/δ) and B = β²T/(2σ²) the minimizer is α* = 1 + sqrt(A/B)
// and ε = 2 sqrt(AB) + B.
struct RdpResult {
  double epsilon;
  double alpha_star;  // +inf when T = 0, NaN when σ = 0
};

// T = 0 gives ε = 0. σ = 0 with T > 0 gives ε = +inf (no privacy).
// Throws ConfigError for σ < 0, T < 0, β outside (0, 1] or δ outside (0, 1).
RdpResult RdpEpsilon(double sigma, std::int64_t steps, double sample_rate,
                     double delta);

// The bracketed objective at a single order α > 1.
double RdpObjective(double alpha, double sigma, std::int64_t steps,
                    double sample_rate, double delta);

// Pointwise minimum of the objective over `alphas`. Throws ContractError for
// an empty grid or an order <= 1.
double RdpEpsilonGrid(double sigma, std::int64_t steps, double sample_rate,
                      double delta, std::span<const double> alphas);

// {1.01, 1.02, ..., 512}
std::vector<double> DefaultAlphaGrid();

}  // namespace qfc::dp

#endif  // QFC_DP_ACCOUNTANT_H_
