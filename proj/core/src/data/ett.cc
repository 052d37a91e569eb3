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
#include "qfc/data/ett.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qfc/errors.h"

namespace qfc::data {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Fail(const std::string& source, std::size_t line,
                       const std::string& what) {
  throw IngestionError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

int FeatureIndex(const std::string& name) {
  for (int i = 0; i < kEttFeatures; ++i) {
    if (kEttColumns[i] == name) return i;
  }
  throw ConfigError("unknown feature column '" + name + "'");
}

std::int64_t ParseTimestamp(const std::string& text) {
  int y, mo, d, h = 0, mi = 0, s = 0;
  char tail = 0;
  const int n = std::sscanf(text.c_str(), "%d-%d-%d %d:%d:%d%c", &y, &mo, &d,
                            &h, &mi, &s, &tail);
  if (n != 3 && n != 5 && n != 6) {
    throw IngestionError("bad timestamp '" + text + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) {
    throw IngestionError("bad timestamp '" + text + "'");
  }
  const auto days = sys_days(ymd).time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + s;
}

std::string FormatTimestamp(std::int64_t seconds) {
  using namespace std::chrono;
  std::int64_t days = seconds / 86400;
  std::int64_t rem = seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02d:%02d:%02d",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(rem / 3600),
                static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
  return buf;
}

RawSeries ParseEttCsv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) Fail(source, 1, "empty file");
  const std::vector<std::string> header = SplitFields(line);
  int date_col = -1;
  std::array<int, kEttFeatures> col_of{};
  col_of.fill(-1);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = Trim(header[c]);
    if (name == "date") {
      date_col = static_cast<int>(c);
      continue;
    }
    bool known = false;
    for (int f = 0; f < kEttFeatures; ++f) {
      if (kEttColumns[f] == name) {
        if (col_of[f] >= 0) Fail(source, 1, "duplicate column '" + name + "'");
        col_of[f] = static_cast<int>(c);
        known = true;
      }
    }
    if (!known) Fail(source, 1, "unexpected column '" + name + "'");
  }
  if (date_col < 0) Fail(source, 1, "missing column 'date'");
  for (int f = 0; f < kEttFeatures; ++f) {
    if (col_of[f] < 0) Fail(source, 1, "missing column '" + kEttColumns[f] + "'");
  }

  RawSeries series;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> fields = SplitFields(line);
    if (fields.size() != header.size()) {
      Fail(source, line_no, "expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(fields.size()));
    }
    std::int64_t ts;
    try {
      ts = ParseTimestamp(Trim(fields[date_col]));
    } catch (const IngestionError& e) {
      Fail(source, line_no, e.what());
    }
    if (!series.timestamps.empty() && ts <= series.timestamps.back()) {
      Fail(source, line_no, "timestamp not strictly increasing");
    }
    series.timestamps.push_back(ts);
    for (int f = 0; f < kEttFeatures; ++f) {
      const std::string text = Trim(fields[col_of[f]]);
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), v);
      if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
          !std::isfinite(v)) {
        Fail(source, line_no, "bad value '" + text + "' in column " +
                                  kEttColumns[f]);
      }
      series.values.push_back(v);
    }
  }
  return series;
}

RawSeries LoadCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open " + path.string());
  return ParseEttCsv(in, path.string());
}

void WriteEttCsv(std::ostream& out, const RawSeries& series) {
  out << "date";
  for (const auto& c : kEttColumns) out << ',' << c;
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < series.rows(); ++r) {
    out << FormatTimestamp(series.timestamps[r]);
    for (int f = 0; f < kEttFeatures; ++f) {
      std::snprintf(buf, sizeof buf, ",%.17g", series.at(r, f));
      out << buf;
    }
    out << '\n';
  }
}

void WriteEttCsv(const std::filesystem::path& path, const RawSeries& series) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  WriteEttCsv(out, series);
}

}  // namespace qfc::data
