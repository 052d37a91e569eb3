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

// Writes an ETT-format CSV with synthetic hourly transformer readings.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qfc/data/ett.h"
#include "qfc/data/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic ETT-format CSV", "make_synthetic_ett"};
  std::string out;
  std::size_t rows = qfc::data::kEtth1Rows;
  std::uint64_t seed = 2016;
  app.add_option("--out", out, "Output CSV path")->required();
  app.add_option("--rows", rows, "Data rows")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    qfc::data::WriteEttCsv(out, qfc::data::SynthesizeEtt(rows, seed));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cout << "wrote " << rows << " rows to " << out << "\n";
  return 0;
}
