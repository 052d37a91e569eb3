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
#include "qfc/dp/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfc/errors.h"

namespace qfc::dp {
namespace {

void CheckArgs(double sigma, std::int64_t steps, double sample_rate,
               double delta) {
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  if (steps < 0) throw ConfigError("step count must be >= 0");
  if (!(sample_rate > 0.0 && sample_rate <= 1.0)) {
    throw ConfigError("sample rate must be in (0, 1]");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0, 1)");
}

}  // namespace

RdpResult RdpEpsilon(double sigma, std::int64_t steps, double sample_rate,
                     double delta) {
  CheckArgs(sigma, steps, sample_rate, delta);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (steps == 0) return {0.0, kInf};
  if (sigma == 0.0) return {kInf, std::numeric_limits<double>::quiet_NaN()};
  const double a = std::log(1.0 / delta);
  const double b = sample_rate * sample_rate * static_cast<double>(steps) /
                   (2.0 * sigma * sigma);
  return {2.0 * std::sqrt(a * b) + b, 1.0 + std::sqrt(a / b)};
}

double RdpObjective(double alpha, double sigma, std::int64_t steps,
                    double sample_rate, double delta) {
  if (!(alpha > 1.0)) throw ContractError("Renyi order must exceed 1");
  CheckArgs(sigma, steps, sample_rate, delta);
  const double b = sample_rate * sample_rate * static_cast<double>(steps) /
                   (2.0 * sigma * sigma);
  return std::log(1.0 / delta) / (alpha - 1.0) + alpha * b;
}

double RdpEpsilonGrid(double sigma, std::int64_t steps, double sample_rate,
                      double delta, std::span<const double> alphas) {
  if (alphas.empty()) throw ContractError("empty Renyi order grid");
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : alphas) {
    best = std::min(best, RdpObjective(alpha, sigma, steps, sample_rate, delta));
  }
  return best;
}

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid;
  grid.reserve(51100);
  for (int k = 101; k <= 51200; ++k) grid.push_back(k / 100.0);
  return grid;
}

}  // namespace qfc::dp
