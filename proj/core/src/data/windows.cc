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
#include "qfc/data/windows.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include "json.hpp"
#include "qfc/errors.h"

namespace qfc::data {
namespace {

RawSeries Cut(const RawSeries& s, std::size_t begin, std::size_t end) {
  RawSeries out;
  out.origin = s.origin + begin;
  out.timestamps.assign(s.timestamps.begin() + begin, s.timestamps.begin() + end);
  out.values.assign(s.values.begin() + begin * kEttFeatures,
                    s.values.begin() + end * kEttFeatures);
  return out;
}

void WriteLe(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
  out.write(bytes, 8);
}

}  // namespace

ChronoSplits SplitChrono(const RawSeries& series, std::array<double, 3> ratios,
                         std::size_t min_rows) {
  double total = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw ContractError("split ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ContractError("split ratios sum to " + std::to_string(total));
  }
  const std::size_t n = series.rows();
  const auto b1 = static_cast<std::size_t>(std::floor(n * ratios[0]));
  const auto b2 = std::min(
      n, static_cast<std::size_t>(std::floor(n * (ratios[0] + ratios[1]))));
  ChronoSplits out{Cut(series, 0, b1), Cut(series, b1, b2), Cut(series, b2, n)};
  for (const RawSeries* s : {&out.train, &out.val, &out.test}) {
    if (s->rows() < min_rows) {
      throw ContractError("series of " + std::to_string(n) +
                          " rows too short: a split has " +
                          std::to_string(s->rows()) + " rows, need " +
                          std::to_string(min_rows));
    }
  }
  return out;
}

StandardScaler StandardScaler::Fit(const RawSeries& train) {
  if (train.rows() == 0) throw IngestionError("cannot fit scaler on no rows");
  StandardScaler s;
  const double n = static_cast<double>(train.rows());
  for (int f = 0; f < kEttFeatures; ++f) {
    double mean = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) mean += train.at(r, f);
    mean /= n;
    double var = 0.0;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      var += (train.at(r, f) - mean) * (train.at(r, f) - mean);
    }
    const double sd = std::sqrt(var / n);
    if (!(sd > 0.0)) {
      throw IngestionError("feature " + kEttColumns[f] +
                           " is constant on the training split");
    }
    s.mean_[f] = mean;
    s.std_[f] = sd;
  }
  return s;
}

RawSeries StandardScaler::Transform(const RawSeries& series) const {
  RawSeries out = series;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (int f = 0; f < kEttFeatures; ++f) {
      out.at(r, f) = (series.at(r, f) - mean_[f]) / std_[f];
    }
  }
  return out;
}

RawSeries StandardScaler::Inverse(const RawSeries& series) const {
  RawSeries out = series;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (int f = 0; f < kEttFeatures; ++f) {
      out.at(r, f) = InverseValue(series.at(r, f), f);
    }
  }
  return out;
}

double StandardScaler::InverseValue(double z, int feature) const {
  return z * std_[feature] + mean_[feature];
}

ScaledSplits FitApplyScaler(const ChronoSplits& raw) {
  StandardScaler scaler = StandardScaler::Fit(raw.train);
  return ScaledSplits{ChronoSplits{scaler.Transform(raw.train),
                                   scaler.Transform(raw.val),
                                   scaler.Transform(raw.test)},
                      scaler};
}

ad::Tensor WindowedDataset::Window(std::size_t i) const {
  const std::size_t len = std::size_t(seq_len) * n_features;
  return ad::Tensor({seq_len, n_features},
                    std::vector<double>(X.begin() + i * len, X.begin() + (i + 1) * len));
}

WindowedDataset MakeWindows(const RawSeries& split, int seq_len,
                            int target_channel, std::string split_name) {
  if (seq_len < 1) throw ContractError("seq_len must be positive");
  if (target_channel < 0 || target_channel >= kEttFeatures) {
    throw ContractError("target channel out of range");
  }
  if (split.rows() < static_cast<std::size_t>(seq_len) + 1) {
    throw ContractError("split of " + std::to_string(split.rows()) +
                        " rows cannot hold a window of " +
                        std::to_string(seq_len) + " + 1");
  }
  WindowedDataset ds;
  ds.split = std::move(split_name);
  ds.seq_len = seq_len;
  ds.target = target_channel;
  ds.origin = split.origin;
  const std::size_t count = split.rows() - seq_len;
  ds.starts.resize(count);
  ds.X.reserve(count * seq_len * kEttFeatures);
  ds.y.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    ds.starts[i] = i;
    ds.X.insert(ds.X.end(), split.values.begin() + i * kEttFeatures,
                split.values.begin() + (i + seq_len) * kEttFeatures);
    ds.y[i] = split.at(i + seq_len, target_channel);
  }
  return ds;
}

WindowedDataset TakeLast(const WindowedDataset& ds, std::size_t count) {
  if (count >= ds.size()) return ds;
  const std::size_t skip = ds.size() - count;
  const std::size_t len = std::size_t(ds.seq_len) * ds.n_features;
  WindowedDataset out = ds;
  out.starts.assign(ds.starts.begin() + skip, ds.starts.end());
  out.X.assign(ds.X.begin() + skip * len, ds.X.end());
  out.y.assign(ds.y.begin() + skip, ds.y.end());
  return out;
}

std::vector<std::vector<std::size_t>> BatchIndices(std::size_t count,
                                                   std::size_t batch,
                                                   std::uint64_t seed,
                                                   std::uint64_t epoch,
                                                   bool shuffle) {
  if (batch == 0) throw ContractError("batch size must be positive");
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(epoch),
                      static_cast<std::uint32_t>(epoch >> 32)};
    std::mt19937_64 rng(seq);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t i = 0; i < count; i += batch) {
    batches.emplace_back(order.begin() + i,
                         order.begin() + std::min(count, i + batch));
  }
  return batches;
}

void WriteWindowDump(const WindowedDataset& ds,
                     const std::filesystem::path& prefix) {
  std::filesystem::path bin = prefix;
  bin += ".bin";
  std::filesystem::path manifest_path = prefix;
  manifest_path += ".json";
  {
    std::ofstream out(bin, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + bin.string());
    for (double v : ds.X) WriteLe(out, v);
    for (double v : ds.y) WriteLe(out, v);
  }
  nlohmann::json m;
  m["format"] = "qfc-windows";
  m["version"] = 1;
  m["split"] = ds.split;
  m["count"] = ds.size();
  m["seq_len"] = ds.seq_len;
  m["n_features"] = ds.n_features;
  m["features"] = kEttColumns;
  m["target"] = kEttColumns[ds.target];
  m["origin"] = ds.origin;
  m["starts"] = ds.starts;
  m["layout"] = "X[count][seq_len][n_features] then y[count], float64 LE";
  m["binary"] = bin.filename().string();
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw Error("cannot write " + manifest_path.string());
  out << m.dump(2) << '\n';
}

}  // namespace qfc::data
