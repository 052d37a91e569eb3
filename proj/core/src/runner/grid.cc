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

#include "qfc/runner/grid.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "qfc/errors.h"

namespace qfc::runner {
namespace {

using nlohmann::json;

std::string SigmaLabel(double sigma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", sigma);
  return buf;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

void GridConfig::Validate() const {
  if (models.empty()) throw ConfigError("grid needs at least one model");
  if (sigmas.empty() && !include_nodp) {
    throw ConfigError("grid needs at least one privacy setting");
  }
  for (double s : sigmas) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ConfigError("noise multiplier must be finite and >= 0");
    }
  }
  base.Validate();
}

std::filesystem::path CellDir(models::ModelKind model,
                              std::optional<double> sigma) {
  return std::filesystem::path(models::ToString(model)) /
         (sigma ? "sigma_" + SigmaLabel(*sigma) : std::string("nodp"));
}

std::vector<GridCell> RunGrid(const GridConfig& config,
                              const PreparedData& data, const TrainFn& train) {
  config.Validate();
  const TrainFn run =
      train ? train
            : TrainFn([](const ExperimentConfig& c, const PreparedData& d) {
                return Train(c, d);
              });

  std::vector<std::optional<double>> settings;
  if (config.include_nodp) settings.emplace_back(std::nullopt);
  for (double s : config.sigmas) settings.emplace_back(s);

  std::vector<GridCell> cells;
  for (models::ModelKind kind : config.models) {
    for (const auto& sigma : settings) {
      GridCell cell;
      cell.model = kind;
      cell.sigma = sigma;
      cell.dir = CellDir(kind, sigma);
      ExperimentConfig c = config.base;
      c.model.kind = kind;
      c.privacy.enabled = sigma.has_value();
      c.privacy.sigma = sigma.value_or(0.0);
      if (!config.base.out.empty()) c.out = config.base.out / cell.dir;
      try {
        cell.report = run(c, data).report;
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
        std::cerr << "cell " << cell.dir.string() << " failed: " << e.what()
                  << "\n";
      }
      cells.push_back(std::move(cell));
    }
  }

  if (!config.base.out.empty()) {
    std::filesystem::create_directories(config.base.out);
    json j = json::array();
    for (const GridCell& cell : cells) {
      json item{{"model", models::ToString(cell.model)},
                {"sigma", cell.sigma ? json(*cell.sigma) : json(nullptr)},
                {"ok", cell.ok},
                {"dir", cell.dir.generic_string()}};
      if (cell.ok) {
        item["report"] = json::parse(ReportJson(cell.report));
      } else {
        item["error"] = cell.error;
      }
      j.push_back(item);
    }
    WriteText(config.base.out / "grid.json", j.dump(2) + "\n");
    WriteText(config.base.out / "table.txt", FormatTable(cells));
  }
  return cells;
}

std::vector<GridCell> RunGrid(const GridConfig& config) {
  config.Validate();
  return RunGrid(config, PrepareData(config.base));
}

std::string FormatTable(const std::vector<GridCell>& cells) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-6s %-10s %-10s %-8s %-8s %-8s\n",
                "Model", "DP", "sigma", "epsilon", "MAE", "MSE", "RMSE");
  out += line;
  for (const GridCell& c : cells) {
    const std::string sigma = c.sigma ? SigmaLabel(*c.sigma) : "-";
    std::string eps = "-";
    if (c.ok && c.report.epsilon) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", *c.report.epsilon);
      eps = buf;
    }
    if (c.ok) {
      std::snprintf(line, sizeof line,
                    "%-8s %-6s %-10s %-10s %-8.4f %-8.4f %-8.4f\n",
                    models::ToString(c.model).c_str(), c.sigma ? "yes" : "no",
                    sigma.c_str(), eps.c_str(), c.report.test.mae,
                    c.report.test.mse, c.report.test.rmse);
    } else {
      std::snprintf(line, sizeof line, "%-8s %-6s %-10s %-10s FAILED\n",
                    models::ToString(c.model).c_str(), c.sigma ? "yes" : "no",
                    sigma.c_str(), eps.c_str());
    }
    out += line;
  }
  return out;
}

}  // namespace qfc::runner
