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
#ifndef QFC_MODELS_FORECASTER_H_
#define QFC_MODELS_FORECASTER_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qfc/autodiff/tape.h"
#include "qfc/models/config.h"
#include "qfc/models/param_store.h"

namespace qfc::models {

enum class InitKind {
  kUniformFanIn,  // U(-1/sqrt(fan_in), 1/sqrt(fan_in)), fan_in = shape[1]
  kZero,
  kOne,
  kRotation,      // 0.1 * U(0, 2π)
  kDecayTau,      // τ with exp(-1/τ) = 0.9
};

struct ParamSpec {
  std::string name;
  ad::Shape shape;
  InitKind init;
};

// Intermediate values recorded per time step when a trace is requested.
using Trace = std::map<std::string, std::vector<ad::Tensor>>;

// A window [seq_len, n_features] -> scalar next-step forecaster.
class Forecaster {
 public:
  explicit Forecaster(ModelConfig config);
  virtual ~Forecaster() = default;

  const ModelConfig& config() const { return config_; }
  const std::vector<ParamSpec>& layout() const { return layout_; }
  std::size_t ParamCount() const;

  // Deterministic in config().seed.
  ParamStore InitParams() const;

  // `params` are bound in layout order. Returns a [1] tensor. When `trace`
  // is non-null, per-step intermediates are appended to it.
  virtual ad::Var Forward(ad::Tape& tape, std::span<const ad::Var> params,
                          const ad::Tensor& window,
                          Trace* trace = nullptr) const = 0;

 protected:
  int Register(std::string name, ad::Shape shape, InitKind init);
  void CheckWindow(const ad::Tensor& window) const;

 private:
  ModelConfig config_;
  std::vector<ParamSpec> layout_;
};

std::unique_ptr<Forecaster> MakeForecaster(const ModelConfig& config);

ParamStore InitParams(const ModelConfig& config);

// Every segment as a leaf on `tape`, in registration order.
std::vector<ad::Var> BindParams(ad::Tape& tape, const ParamStore& store);

double Predict(const Forecaster& model, const ParamStore& params,
               const ad::Tensor& window, Trace* trace = nullptr);

struct SampleGradient {
  double loss = 0.0;
  double prediction = 0.0;
  std::vector<double> grad;  // flat, registration order
};

// Squared error against `target` and its gradient for one window.
SampleGradient LossAndGradient(const Forecaster& model,
                               const ParamStore& params,
                               const ad::Tensor& window, double target);

}  // namespace qfc::models

#endif  // QFC_MODELS_FORECASTER_H_
