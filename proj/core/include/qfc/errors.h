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

#ifndef QFC_ERRORS_H_
#define QFC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qfc {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration value (qubit count, hyperparameter, CLI option).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Violated precondition on shapes, dimensions or call order.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Non-finite value where a finite one is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Input that admits no well-defined encoding, e.g. a zero vector for
// amplitude encoding.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class UnsupportedGateError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent data file.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// Training diverged; the message carries the diagnostic record.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfc

#endif  // QFC_ERRORS_H_
