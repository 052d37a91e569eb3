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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "qfc/dp/accountant.h"
#include "qfc/dp/privacy.h"
#include "qfc/models/forecaster.h"
#include "qfc/qsim/gradients.h"
#include "qfc/qsim/simulator.h"
#include "qfc/qsim/templates.h"

namespace {

using qfc::qsim::AngleBinding;
using qfc::qsim::GateOp;

void BM_ApplyRY(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qfc::qsim::Statevector psi(n);
  const GateOp gate = GateOp::RY(n / 2, AngleBinding::Constant(0.3));
  for (auto _ : state) {
    qfc::qsim::ApplyGate(psi, gate, 0.3);
    benchmark::DoNotOptimize(psi.amps().data());
  }
  state.SetItemsProcessed(state.iterations() * psi.dim());
}
BENCHMARK(BM_ApplyRY)->DenseRange(4, 16, 4);

void BM_ApplyCNOT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qfc::qsim::Statevector psi(n);
  const GateOp gate = GateOp::CNOT(0, n - 1);
  for (auto _ : state) {
    qfc::qsim::ApplyGate(psi, gate);
    benchmark::DoNotOptimize(psi.amps().data());
  }
  state.SetItemsProcessed(state.iterations() * psi.dim());
}
BENCHMARK(BM_ApplyCNOT)->DenseRange(4, 16, 4);

std::vector<double> Uniform(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void RunAdjoint(benchmark::State& state, const qfc::qsim::CircuitTemplate& tpl) {
  const auto params = Uniform(tpl.n_trainable, 1);
  const auto inputs = Uniform(tpl.n_inputs, 2);
  const auto upstream = Uniform(tpl.measured_wires.size(), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qfc::qsim::AdjointVjp(tpl, params, inputs, upstream));
  }
}

void RunShift(benchmark::State& state, const qfc::qsim::CircuitTemplate& tpl) {
  const auto params = Uniform(tpl.n_trainable, 1);
  const auto inputs = Uniform(tpl.n_inputs, 2);
  const auto upstream = Uniform(tpl.measured_wires.size(), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qfc::qsim::ParamShiftVjp(tpl, params, inputs, upstream));
  }
}

void BM_AdjointQlstm(benchmark::State& state) {
  RunAdjoint(state, qfc::qsim::QlstmCircuit(11, 5, 4));
}
BENCHMARK(BM_AdjointQlstm);

void BM_ShiftQlstm(benchmark::State& state) {
  RunShift(state, qfc::qsim::QlstmCircuit(11, 5, 4));
}
BENCHMARK(BM_ShiftQlstm);

void BM_AdjointQasa(benchmark::State& state) {
  RunAdjoint(state, qfc::qsim::QasaCircuit(9, 2, 16));
}
BENCHMARK(BM_AdjointQasa);

void BM_AdjointQrwkv(benchmark::State& state) {
  RunAdjoint(state, qfc::qsim::QrwkvCircuit(4, 2));
}
BENCHMARK(BM_AdjointQrwkv);

void BM_SampleGradient(benchmark::State& state) {
  const auto kind = static_cast<qfc::models::ModelKind>(state.range(0));
  const auto config = qfc::models::ModelConfig::Paper(kind);
  const auto model = qfc::models::MakeForecaster(config);
  const qfc::models::ParamStore params = model->InitParams();
  const qfc::ad::Tensor window({config.seq_len, config.n_features},
                               Uniform(config.seq_len * config.n_features, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qfc::models::LossAndGradient(*model, params, window, 0.5));
  }
  state.SetLabel(qfc::models::ToString(kind));
}
BENCHMARK(BM_SampleGradient)
    ->Arg(static_cast<int>(qfc::models::ModelKind::kLstm))
    ->Arg(static_cast<int>(qfc::models::ModelKind::kQlstm))
    ->Arg(static_cast<int>(qfc::models::ModelKind::kQasa))
    ->Arg(static_cast<int>(qfc::models::ModelKind::kQrwkv))
    ->Unit(benchmark::kMillisecond);

void BM_AggregateNoisy(benchmark::State& state) {
  std::vector<std::vector<double>> grads;
  for (int i = 0; i < 64; ++i) grads.push_back(Uniform(753, 10 + i));
  qfc::dp::PrivacyConfig cfg{.enabled = true, .clip = 1.0, .sigma = 1.0};
  qfc::dp::NoiseRng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::dp::AggregateNoisy(grads, cfg, rng));
  }
}
BENCHMARK(BM_AggregateNoisy);

void BM_RdpEpsilon(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::dp::RdpEpsilon(1.0, 1000, 0.01, 1e-5));
  }
}
BENCHMARK(BM_RdpEpsilon);

}  // namespace

BENCHMARK_MAIN();
