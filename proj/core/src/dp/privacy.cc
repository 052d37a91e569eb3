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
#include "qfc/dp/privacy.h"

#include <cmath>
#include <string>

#include "qfc/errors.h"

namespace qfc::dp {

bool PrivacyConfig::Validate(std::size_t n_train) const {
  if (!enabled) return true;
  if (!(clip > 0.0)) throw ConfigError("clip bound must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("noise multiplier must be finite and >= 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
  if (!(sample_rate > 0.0 && sample_rate <= 1.0)) {
    throw ConfigError("sample rate must be in (0, 1]");
  }
  return n_train == 0 || delta < 1.0 / static_cast<double>(n_train);
}

double L2Norm(std::span<const double> g) {
  double sq = 0.0;
  for (double v : g) sq += v * v;
  return std::sqrt(sq);
}

std::vector<double> ClipGlobal(std::span<const double> g, double clip) {
  std::vector<double> out(g.begin(), g.end());
  const double norm = L2Norm(g);
  if (norm <= clip) return out;
  const double factor = clip / norm;
  for (double& v : out) v *= factor;
  return out;
}

std::vector<double> SumGradients(std::span<const std::vector<double>> grads) {
  if (grads.empty()) throw ContractError("empty gradient batch");
  std::vector<double> sum(grads.front().size(), 0.0);
  for (const auto& g : grads) {
    if (g.size() != sum.size()) {
      throw ContractError("ragged gradient batch: " + std::to_string(g.size()) +
                          " vs " + std::to_string(sum.size()));
    }
    for (std::size_t i = 0; i < g.size(); ++i) sum[i] += g[i];
  }
  return sum;
}

std::vector<double> MeanGradient(std::span<const std::vector<double>> grads) {
  std::vector<double> out = SumGradients(grads);
  const double b = static_cast<double>(grads.size());
  for (double& v : out) v /= b;
  return out;
}

std::vector<double> AggregateNoisy(std::span<const std::vector<double>> grads,
                                   const PrivacyConfig& cfg, NoiseRng& rng) {
  if (grads.empty()) throw ContractError("empty gradient batch");
  std::vector<std::vector<double>> clipped;
  clipped.reserve(grads.size());
  for (const auto& g : grads) clipped.push_back(ClipGlobal(g, cfg.clip));
  std::vector<double> out = SumGradients(clipped);
  if (cfg.sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg.sigma * cfg.clip);
    for (double& v : out) v += noise(rng);
  }
  const double b = static_cast<double>(grads.size());
  for (double& v : out) v /= b;
  return out;
}

}  // namespace qfc::dp
