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
#ifndef QFC_RUNNER_TRAIN_H_
#define QFC_RUNNER_TRAIN_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qfc/data/windows.h"
#include "qfc/dp/privacy.h"
#include "qfc/models/config.h"
#include "qfc/models/forecaster.h"
#include "qfc/models/param_store.h"
#include "qfc/runner/metrics.h"

namespace qfc::runner {

struct ExperimentConfig {
  models::ModelConfig model;
  int epochs = 30;
  int batch = 64;
  double lr = 1e-3;
  // enabled=false trains without clipping or noise.
  dp::PrivacyConfig privacy{.enabled = false, .clip = 1.0, .sigma = 0.0,
                            .delta = 1e-5, .sample_rate = 1.0};
  std::uint64_t seed = 0;
  std::filesystem::path data;
  // Empty disables all file output.
  std::filesystem::path out;
  // Keep only the last N training windows.
  std::optional<std::size_t> subset;
  // Keep only the last N validation and test windows.
  std::optional<std::size_t> eval_subset;
  std::string target = "OT";
  std::array<double, 3> split = {0.7, 0.1, 0.2};
  int threads = 1;
  // Ordered reduction and no wall-clock fields in output files.
  bool deterministic = false;
  // Report metrics in the target's original units.
  bool raw_metrics = false;

  // Throws ConfigError.
  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  Metrics val;
  std::int64_t steps = 0;
  std::optional<double> epsilon;  // set when DP is enabled
  double wall_seconds = 0.0;
};

struct MetricsReport {
  std::string model;
  bool dp = false;
  double sigma = 0.0;
  double clip = 0.0;
  double delta = 0.0;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::size_t param_count = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  int epochs = 0;
  std::int64_t steps = 0;
  std::string scale = "standardized";
  Metrics test;
};

struct PreparedData {
  data::WindowedDataset train;
  data::WindowedDataset val;
  data::WindowedDataset test;
  data::StandardScaler scaler;
  std::size_t rows = 0;
};

// Loads config.data and applies split, scaling, windowing and subset caps.
PreparedData PrepareData(const ExperimentConfig& config);
PreparedData PrepareData(const data::RawSeries& series,
                         const ExperimentConfig& config);

// Predictions for every window, in dataset order.
std::vector<double> PredictAll(const models::Forecaster& model,
                               const models::ParamStore& params,
                               const data::WindowedDataset& ds, int threads);

// Metrics on the standardized scale, or in target units when raw is set.
Metrics Evaluate(std::span<const double> pred, const data::WindowedDataset& ds,
                 const data::StandardScaler& scaler, bool raw);

struct TrainResult {
  models::ParamStore params;
  std::vector<EpochRecord> epochs;
  MetricsReport report;
  std::vector<double> test_predictions;
};

// DP-SGD (or plain minibatch SGD with Adam) on prepared data. When
// config.out is set, writes epochs.jsonl, report.json, predictions.csv and
// checkpoint.qfc there. A non-finite loss writes diagnostic.json and throws
// TrainingError.
TrainResult Train(const ExperimentConfig& config, const PreparedData& data);
TrainResult Train(const ExperimentConfig& config);

// Restores the experiment settings stored with a checkpoint. Data path,
// output directory and thread count are left at their defaults.
struct Checkpoint {
  ExperimentConfig config;
  models::ParamStore params;
};
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

std::string ReportJson(const MetricsReport& report);
std::string EpochJson(const EpochRecord& record, bool with_wall_time);

}  // namespace qfc::runner

#endif  // QFC_RUNNER_TRAIN_H_
