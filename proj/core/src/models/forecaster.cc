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
#include "qfc/models/forecaster.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qfc/autodiff/ops.h"
#include "qfc/errors.h"
#include "zoo.h"

namespace qfc::models {

Forecaster::Forecaster(ModelConfig config) : config_(std::move(config)) {
  config_.Validate();
}

std::size_t Forecaster::ParamCount() const {
  std::size_t n = 0;
  for (const ParamSpec& p : layout_) n += ad::ShapeSize(p.shape);
  return n;
}

int Forecaster::Register(std::string name, ad::Shape shape, InitKind init) {
  layout_.push_back(ParamSpec{std::move(name), std::move(shape), init});
  return static_cast<int>(layout_.size()) - 1;
}

void Forecaster::CheckWindow(const ad::Tensor& window) const {
  if (window.rank() != 2 || window.dim(0) != config_.seq_len ||
      window.dim(1) != config_.n_features) {
    throw ContractError("window shape " + ad::ShapeString(window.shape()) +
                        " != " +
                        ad::ShapeString({config_.seq_len, config_.n_features}));
  }
}

ParamStore Forecaster::InitParams() const {
  std::mt19937_64 rng(config_.seed);
  ParamStore store;
  for (const ParamSpec& spec : layout_) {
    ad::Tensor t(spec.shape);
    switch (spec.init) {
      case InitKind::kUniformFanIn: {
        const double bound = 1.0 / std::sqrt(static_cast<double>(spec.shape.at(1)));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (double& v : t.vec()) v = dist(rng);
        break;
      }
      case InitKind::kZero:
        break;
      case InitKind::kOne:
        for (double& v : t.vec()) v = 1.0;
        break;
      case InitKind::kRotation: {
        std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
        for (double& v : t.vec()) v = 0.1 * dist(rng);
        break;
      }
      case InitKind::kDecayTau:
        for (double& v : t.vec()) v = -1.0 / std::log(0.9);
        break;
    }
    store.Add(spec.name, std::move(t));
  }
  return store;
}

std::unique_ptr<Forecaster> MakeForecaster(const ModelConfig& config) {
  switch (config.kind) {
    case ModelKind::kLstm:
      return std::make_unique<LstmForecaster>(config);
    case ModelKind::kQlstm:
      return std::make_unique<QlstmForecaster>(config);
    case ModelKind::kQasa:
      return std::make_unique<QasaForecaster>(config);
    case ModelKind::kQrwkv:
      return std::make_unique<QrwkvForecaster>(config);
  }
  throw ConfigError("unknown model kind");
}

ParamStore InitParams(const ModelConfig& config) {
  return MakeForecaster(config)->InitParams();
}

std::vector<ad::Var> BindParams(ad::Tape& tape, const ParamStore& store) {
  std::vector<ad::Var> vars;
  vars.reserve(store.num_segments());
  for (std::size_t i = 0; i < store.num_segments(); ++i) {
    vars.push_back(tape.Leaf(store.value(i)));
  }
  return vars;
}

namespace {

void CheckStore(const Forecaster& model, const ParamStore& params) {
  const auto& layout = model.layout();
  if (layout.size() != params.num_segments()) {
    throw ContractError("parameter store has " +
                        std::to_string(params.num_segments()) +
                        " segments, model expects " +
                        std::to_string(layout.size()));
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].name != params.name(i) ||
        layout[i].shape != params.value(i).shape()) {
      throw ContractError("parameter segment " + std::to_string(i) + " is '" +
                          params.name(i) + "' " +
                          ad::ShapeString(params.value(i).shape()) +
                          ", model expects '" + layout[i].name + "' " +
                          ad::ShapeString(layout[i].shape));
    }
  }
}

}  // namespace

double Predict(const Forecaster& model, const ParamStore& params,
               const ad::Tensor& window, Trace* trace) {
  CheckStore(model, params);
  ad::Tape tape;
  const std::vector<ad::Var> vars = BindParams(tape, params);
  return model.Forward(tape, vars, window, trace).value().item();
}

SampleGradient LossAndGradient(const Forecaster& model,
                               const ParamStore& params,
                               const ad::Tensor& window, double target) {
  CheckStore(model, params);
  ad::Tape tape;
  const std::vector<ad::Var> vars = BindParams(tape, params);
  const ad::Var pred = model.Forward(tape, vars, window);
  const ad::Var loss = ad::Mse(pred, tape.Leaf(ad::Tensor::Vector({target})));
  tape.Backward(loss);

  SampleGradient out;
  out.loss = loss.value().item();
  out.prediction = pred.value().item();
  out.grad.reserve(params.total_dim());
  for (const ad::Var& v : vars) {
    const ad::Tensor& g = tape.grad(v);
    out.grad.insert(out.grad.end(), g.vec().begin(), g.vec().end());
  }
  return out;
}

}  // namespace qfc::models
