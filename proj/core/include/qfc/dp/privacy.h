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
#ifndef QFC_DP_PRIVACY_H_
#define QFC_DP_PRIVACY_H_

#include <random>
#include <span>
#include <vector>

namespace qfc::dp {

struct PrivacyConfig {
  bool enabled = false;
  double clip = 1.0;         // ℓ2 bound C on each per-sample gradient
  double sigma = 0.0;        // noise multiplier; noise std is sigma * clip
  double delta = 1e-5;
  double sample_rate = 1.0;  // β = batch / train size

  // Throws ConfigError. Returns false (without throwing) when delta is not
  // below 1/n_train, which is allowed but weak.
  bool Validate(std::size_t n_train = 0) const;
};

using NoiseRng = std::mt19937_64;

// g * min(1, C / ||g||). Vectors already within the bound are returned
// unchanged bit for bit.
std::vector<double> ClipGlobal(std::span<const double> g, double clip);
double L2Norm(std::span<const double> g);

// Elementwise sum in sample order. Throws ContractError on an empty batch or
// ragged dimensions.
std::vector<double> SumGradients(std::span<const std::vector<double>> grads);

// Plain average, the non-private path: SumGradients / B.
std::vector<double> MeanGradient(std::span<const std::vector<double>> grads);

// (sum_i clip(g_i, C) + ξ) / B with ξ ~ N(0, σ²C² I). With σ = 0 no random
// numbers are drawn.
std::vector<double> AggregateNoisy(std::span<const std::vector<double>> grads,
                                   const PrivacyConfig& cfg, NoiseRng& rng);

}  // namespace qfc::dp

#endif  // QFC_DP_PRIVACY_H_
