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
#ifndef QFC_DATA_WINDOWS_H_
#define QFC_DATA_WINDOWS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qfc/autodiff/tensor.h"
#include "qfc/data/ett.h"

namespace qfc::data {

struct ChronoSplits {
  RawSeries train;
  RawSeries val;
  RawSeries test;
};

// Contiguous chronological segments with boundaries floor(n * cumulative
// ratio). Ratios must be non-negative and sum to 1. Each split must have at
// least `min_rows` rows (pass 0 to allow empty splits). Throws ContractError.
ChronoSplits SplitChrono(const RawSeries& series,
                         std::array<double, 3> ratios = {0.7, 0.1, 0.2},
                         std::size_t min_rows = 17);

// Per-feature z-score with population statistics of the training split.
class StandardScaler {
 public:
  // Throws IngestionError for an empty series or a constant feature.
  static StandardScaler Fit(const RawSeries& train);

  RawSeries Transform(const RawSeries& series) const;
  RawSeries Inverse(const RawSeries& series) const;
  double InverseValue(double z, int feature) const;

  const std::array<double, kEttFeatures>& mean() const { return mean_; }
  const std::array<double, kEttFeatures>& stddev() const { return std_; }

 private:
  std::array<double, kEttFeatures> mean_{};
  std::array<double, kEttFeatures> std_{};
};

struct ScaledSplits {
  ChronoSplits splits;
  StandardScaler scaler;
};

ScaledSplits FitApplyScaler(const ChronoSplits& raw);

// X[i] = rows [i, i + seq_len), y[i] = target at row i + seq_len.
struct WindowedDataset {
  std::string split;
  int seq_len = 16;
  int n_features = kEttFeatures;
  int target = 6;
  std::size_t origin = 0;           // global row of the split's first row
  std::vector<std::size_t> starts;  // window start rows within the split
  std::vector<double> X;            // [count, seq_len, n_features]
  std::vector<double> y;

  std::size_t size() const { return y.size(); }
  ad::Tensor Window(std::size_t i) const;
};

// Throws ContractError when the split has fewer than seq_len + 1 rows.
WindowedDataset MakeWindows(const RawSeries& split, int seq_len,
                            int target_channel, std::string split_name = "");

// The last `count` windows (all of them if count >= size()).
WindowedDataset TakeLast(const WindowedDataset& ds, std::size_t count);

// Index batches for one epoch. With shuffle, a permutation seeded by
// (seed, epoch); the final short batch is kept.
std::vector<std::vector<std::size_t>> BatchIndices(std::size_t count,
                                                   std::size_t batch,
                                                   std::uint64_t seed,
                                                   std::uint64_t epoch,
                                                   bool shuffle = true);

// Writes <prefix>.bin (X then y as little-endian doubles) and
// <prefix>.json (shapes, split, target, window starts).
void WriteWindowDump(const WindowedDataset& ds,
                     const std::filesystem::path& prefix);

}  // namespace qfc::data

#endif  // QFC_DATA_WINDOWS_H_
