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

#include "qfc/runner/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "qfc/errors.h"
#include "qfc/models/forecaster.h"
#include "qfc/qsim/gradients.h"
#include "qfc/qsim/simulator.h"
#include "qfc/qsim/templates.h"
#include "qfc/runner/metrics.h"

namespace qfc::runner {
namespace {

double Weighted(const qsim::CircuitTemplate& tpl, std::span<const double> params,
                std::span<const double> inputs, std::span<const double> w) {
  const std::vector<double> z = qsim::Measure(tpl, params, inputs);
  double f = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) f += w[k] * z[k];
  return f;
}

// Fourth-order central stencil.
double CentralDiff(std::vector<double>& x, std::size_t j, double h,
                   const std::function<double()>& f) {
  const double saved = x[j];
  const auto at = [&](double offset) {
    x[j] = saved + offset;
    return f();
  };
  const double d = 8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h));
  x[j] = saved;
  return d / (12.0 * h);
}

void Append(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

ErrorStats Summarize(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ContractError("mismatched gradient lengths");
  ErrorStats s;
  s.count = a.size();
  if (a.empty()) return s;
  std::vector<double> rel(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    s.max_abs = std::max(s.max_abs, std::abs(a[i] - b[i]));
    rel[i] = RelativeError(a[i], b[i]);
  }
  std::sort(rel.begin(), rel.end());
  s.max_rel = rel.back();
  const auto k = static_cast<std::size_t>(std::ceil(0.99 * rel.size()));
  s.p99_rel = rel[std::max<std::size_t>(k, 1) - 1];
  return s;
}

qsim::CircuitTemplate FamilyCircuit(const models::ModelConfig& c) {
  c.Validate();
  switch (c.kind) {
    case models::ModelKind::kQlstm:
      return qsim::QlstmCircuit(c.QubitCount(), c.qlstm_blocks, c.qlstm_hidden);
    case models::ModelKind::kQasa:
      return qsim::QasaCircuit(c.qasa_qubits, c.qasa_layers, c.qasa_d_model);
    case models::ModelKind::kQrwkv:
      return qsim::QrwkvCircuit(c.qrwkv_qubits, c.qrwkv_layers);
    case models::ModelKind::kLstm:
      break;
  }
  throw ConfigError("the lstm model has no circuit");
}

CircuitCheck CheckCircuit(const qsim::CircuitTemplate& tpl, int instances,
                          std::uint64_t seed, double fd_step) {
  tpl.Validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const bool amplitude = tpl.prep == qsim::StatePrep::kAmplitude;

  std::vector<double> adj_p, shift_p, adj_all, fd_all, shift_fd, fd_p;
  for (int it = 0; it < instances; ++it) {
    std::vector<double> params(tpl.n_trainable);
    for (double& v : params) v = angle(rng);
    std::vector<double> inputs(tpl.n_inputs);
    for (double& v : inputs) v = amplitude ? unit(rng) : 2.0 * unit(rng);
    std::vector<double> w(tpl.measured_wires.size());
    for (double& v : w) v = unit(rng);

    const qsim::CircuitGradient adj = qsim::AdjointVjp(tpl, params, inputs, w);
    const std::vector<double> shift = qsim::ParamShiftVjp(tpl, params, inputs, w);
    const auto f = [&] { return Weighted(tpl, params, inputs, w); };
    std::vector<double> fdp(params.size()), fdx(inputs.size());
    for (std::size_t j = 0; j < params.size(); ++j) {
      fdp[j] = CentralDiff(params, j, fd_step, f);
    }
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      fdx[j] = CentralDiff(inputs, j, fd_step, f);
    }
    Append(adj_p, adj.d_params);
    Append(shift_p, shift);
    Append(adj_all, adj.d_params);
    Append(adj_all, adj.d_inputs);
    Append(fd_all, fdp);
    Append(fd_all, fdx);
    Append(fd_p, fdp);
  }
  CircuitCheck out;
  out.instances = instances;
  out.adjoint_vs_shift = Summarize(adj_p, shift_p);
  out.adjoint_vs_fd = Summarize(adj_all, fd_all);
  out.shift_vs_fd = Summarize(shift_p, fd_p);
  return out;
}

ModelCheck CheckModel(const models::ModelConfig& config, int windows,
                      std::uint64_t seed, double fd_step) {
  const auto model = models::MakeForecaster(config);
  models::ParamStore store = model->InitParams();
  std::vector<double> flat = store.Flatten();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> analytic, numeric;
  for (int it = 0; it < windows; ++it) {
    std::vector<double> x(static_cast<std::size_t>(config.seq_len) *
                          config.n_features);
    for (double& v : x) v = normal(rng);
    const ad::Tensor window({config.seq_len, config.n_features}, x);
    const double target = normal(rng);

    store.Unflatten(flat);
    const models::SampleGradient g =
        models::LossAndGradient(*model, store, window, target);
    const auto loss = [&] {
      store.Unflatten(flat);
      const double d = models::Predict(*model, store, window) - target;
      return d * d;
    };
    for (std::size_t j = 0; j < flat.size(); ++j) {
      numeric.push_back(CentralDiff(flat, j, fd_step, loss));
    }
    Append(analytic, g.grad);
  }
  store.Unflatten(flat);
  ModelCheck out;
  out.n_params = flat.size();
  out.backprop_vs_fd = Summarize(analytic, numeric);
  return out;
}

}  // namespace qfc::runner
