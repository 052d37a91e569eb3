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
#include "qfc/data/synthetic.h"

#include <cmath>
#include <numbers>
#include <random>

namespace qfc::data {

RawSeries SynthesizeEtt(std::size_t rows, std::uint64_t seed) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  RawSeries s;
  s.timestamps.reserve(rows);
  s.values.reserve(rows * kEttFeatures);
  const std::int64_t start = ParseTimestamp("2016-07-01 00:00:00");

  double disturbance = 0.0;
  double oil = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    const double t = static_cast<double>(r);
    const double daily = std::sin(kTwoPi * (t - 6.0) / 24.0) +
                         0.35 * std::sin(kTwoPi * t / 12.0);
    const double weekly = 0.4 * std::sin(kTwoPi * t / 168.0);
    const double yearly = std::sin(kTwoPi * (t - 2000.0) / 8766.0);
    disturbance = 0.95 * disturbance + 0.25 * unit(rng);
    const double load = daily + weekly + 0.6 * yearly + disturbance;

    const double hufl = 7.0 + 2.2 * load + 0.30 * unit(rng);
    const double hull = 2.0 + 0.6 * load + 0.15 * unit(rng);
    const double mufl = 4.5 + 1.8 * load + 0.30 * unit(rng);
    const double mull = 1.0 + 0.5 * load + 0.12 * unit(rng);
    const double lufl = 3.0 + 0.7 * daily + 0.3 * disturbance + 0.10 * unit(rng);
    const double lull = 1.2 + 0.2 * daily + 0.06 * unit(rng);

    // Oil temperature: first-order lag behind load plus ambient season.
    const double drive = 14.0 + 3.0 * load + 6.0 * yearly;
    oil = r == 0 ? drive : 0.93 * oil + 0.07 * drive + 0.12 * unit(rng);

    s.timestamps.push_back(start + static_cast<std::int64_t>(r) * 3600);
    for (double v : {hufl, hull, mufl, mull, lufl, lull, oil}) {
      s.values.push_back(std::round(v * 1000.0) / 1000.0);
    }
  }
  return s;
}

}  // namespace qfc::data
