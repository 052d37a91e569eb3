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
#ifndef QFC_DATA_ETT_H_
#define QFC_DATA_ETT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qfc::data {

inline constexpr int kEttFeatures = 7;
inline const std::array<std::string, kEttFeatures> kEttColumns = {
    "HUFL", "HULL", "MUFL", "MULL", "LUFL", "LULL", "OT"};

// Hourly multivariate series. Values are row-major, kEttFeatures per row, in
// kEttColumns order regardless of the column order in the source file.
struct RawSeries {
  std::vector<std::int64_t> timestamps;  // seconds since 1970-01-01 UTC
  std::vector<double> values;
  // Row index of the first row in the series this one was cut from.
  std::size_t origin = 0;

  std::size_t rows() const { return timestamps.size(); }
  double at(std::size_t row, int feature) const {
    return values[row * kEttFeatures + feature];
  }
  double& at(std::size_t row, int feature) {
    return values[row * kEttFeatures + feature];
  }
};

// Index of a column name in kEttColumns. Throws ConfigError.
int FeatureIndex(const std::string& name);

// "YYYY-MM-DD HH:MM:SS" <-> seconds since epoch (UTC, proleptic Gregorian).
std::int64_t ParseTimestamp(const std::string& text);
std::string FormatTimestamp(std::int64_t seconds);

// Reads the ETT CSV layout: header "date" plus the seven feature columns.
// Throws IngestionError naming the offending line for a missing column, an
// empty or unparsable number, a wrong field count or a non-increasing
// timestamp.
RawSeries ParseEttCsv(std::istream& in, const std::string& source = "<stream>");
RawSeries LoadCsv(const std::filesystem::path& path);

void WriteEttCsv(std::ostream& out, const RawSeries& series);
void WriteEttCsv(const std::filesystem::path& path, const RawSeries& series);

}  // namespace qfc::data

#endif  // QFC_DATA_ETT_H_
