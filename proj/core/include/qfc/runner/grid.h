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
#ifndef QFC_RUNNER_GRID_H_
#define QFC_RUNNER_GRID_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfc/models/config.h"
#include "qfc/runner/train.h"

namespace qfc::runner {

struct GridConfig {
  ExperimentConfig base;
  std::vector<models::ModelKind> models;
  std::vector<double> sigmas = {0.5, 1.0, 2.0};
  bool include_nodp = true;

  // Throws ConfigError.
  void Validate() const;
};

struct GridCell {
  models::ModelKind model;
  std::optional<double> sigma;  // empty for the non-private run
  bool ok = false;
  std::string error;
  std::filesystem::path dir;
  MetricsReport report;
};

using TrainFn = std::function<TrainResult(const ExperimentConfig&,
                                          const PreparedData&)>;

// Cell directory name relative to the grid output: <model>/nodp or
// <model>/sigma_<g>.
std::filesystem::path CellDir(models::ModelKind model,
                              std::optional<double> sigma);

// Trains every (model, privacy setting) cell on one prepared dataset. A
// cell that throws is recorded as failed and the rest still run. Writes
// grid.json and table.txt under base.out when it is set.
std::vector<GridCell> RunGrid(const GridConfig& config,
                              const PreparedData& data,
                              const TrainFn& train = TrainFn());
std::vector<GridCell> RunGrid(const GridConfig& config);

// Fixed-width table with one row per cell.
std::string FormatTable(const std::vector<GridCell>& cells);

}  // namespace qfc::runner

#endif  // QFC_RUNNER_GRID_H_
