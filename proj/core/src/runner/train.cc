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

#include "qfc/runner/train.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "json.hpp"
#include "qfc/dp/accountant.h"
#include "qfc/dp/adam.h"
#include "qfc/errors.h"
#include "qfc/runner/parallel.h"

namespace qfc::runner {
namespace {

using nlohmann::json;

// JSON has no infinity; the accountant returns it for σ = 0.
json Number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json MetricsJson(const Metrics& m) {
  return json{{"mae", Number(m.mae)}, {"mse", Number(m.mse)},
              {"rmse", Number(m.rmse)}};
}

json ModelJson(const models::ModelConfig& c) {
  return json{{"kind", models::ToString(c.kind)},
              {"seq_len", c.seq_len},
              {"n_features", c.n_features},
              {"seed", c.seed},
              {"lstm_hidden", c.lstm_hidden},
              {"lstm_layers", c.lstm_layers},
              {"qlstm_hidden", c.qlstm_hidden},
              {"qlstm_blocks", c.qlstm_blocks},
              {"qasa_qubits", c.qasa_qubits},
              {"qasa_d_model", c.qasa_d_model},
              {"qasa_layers", c.qasa_layers},
              {"qasa_head_width", c.qasa_head_width},
              {"qrwkv_qubits", c.qrwkv_qubits},
              {"qrwkv_d", c.qrwkv_d},
              {"qrwkv_layers", c.qrwkv_layers}};
}

models::ModelConfig ModelFromJson(const json& j) {
  models::ModelConfig c;
  c.kind = models::ParseModelKind(j.at("kind").get<std::string>());
  c.seq_len = j.at("seq_len");
  c.n_features = j.at("n_features");
  c.seed = j.at("seed");
  c.lstm_hidden = j.at("lstm_hidden");
  c.lstm_layers = j.at("lstm_layers");
  c.qlstm_hidden = j.at("qlstm_hidden");
  c.qlstm_blocks = j.at("qlstm_blocks");
  c.qasa_qubits = j.at("qasa_qubits");
  c.qasa_d_model = j.at("qasa_d_model");
  c.qasa_layers = j.at("qasa_layers");
  c.qasa_head_width = j.at("qasa_head_width");
  c.qrwkv_qubits = j.at("qrwkv_qubits");
  c.qrwkv_d = j.at("qrwkv_d");
  c.qrwkv_layers = j.at("qrwkv_layers");
  return c;
}

json ExperimentJson(const ExperimentConfig& c) {
  json j{{"epochs", c.epochs},
         {"batch", c.batch},
         {"lr", c.lr},
         {"dp", c.privacy.enabled},
         {"clip", c.privacy.clip},
         {"sigma", c.privacy.sigma},
         {"delta", c.privacy.delta},
         {"seed", c.seed},
         {"target", c.target},
         {"split", c.split},
         {"raw_metrics", c.raw_metrics}};
  j["subset"] = c.subset ? json(*c.subset) : json(nullptr);
  j["eval_subset"] = c.eval_subset ? json(*c.eval_subset) : json(nullptr);
  return j;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::Validate() const {
  model.Validate();
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (batch < 1) throw ConfigError("batch must be at least 1");
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw ConfigError("learning rate must be positive");
  }
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (subset && *subset == 0) throw ConfigError("subset must be positive");
  if (eval_subset && *eval_subset == 0) {
    throw ConfigError("eval subset must be positive");
  }
  data::FeatureIndex(target);
  privacy.Validate();
}

PreparedData PrepareData(const data::RawSeries& series,
                         const ExperimentConfig& config) {
  const int target = data::FeatureIndex(config.target);
  const int seq_len = config.model.seq_len;
  const data::ChronoSplits raw =
      data::SplitChrono(series, config.split, static_cast<std::size_t>(seq_len) + 1);
  data::ScaledSplits scaled = data::FitApplyScaler(raw);
  PreparedData out;
  out.rows = series.rows();
  out.scaler = scaled.scaler;
  out.train = data::MakeWindows(scaled.splits.train, seq_len, target, "train");
  out.val = data::MakeWindows(scaled.splits.val, seq_len, target, "val");
  out.test = data::MakeWindows(scaled.splits.test, seq_len, target, "test");
  if (config.subset) out.train = data::TakeLast(out.train, *config.subset);
  if (config.eval_subset) {
    out.val = data::TakeLast(out.val, *config.eval_subset);
    out.test = data::TakeLast(out.test, *config.eval_subset);
  }
  return out;
}

PreparedData PrepareData(const ExperimentConfig& config) {
  if (config.data.empty()) throw ConfigError("no data path given");
  return PrepareData(data::LoadCsv(config.data), config);
}

std::vector<double> PredictAll(const models::Forecaster& model,
                               const models::ParamStore& params,
                               const data::WindowedDataset& ds, int threads) {
  std::vector<double> pred(ds.size());
  ParallelFor(ds.size(), threads, [&](std::size_t i) {
    pred[i] = models::Predict(model, params, ds.Window(i));
  });
  return pred;
}

Metrics Evaluate(std::span<const double> pred, const data::WindowedDataset& ds,
                 const data::StandardScaler& scaler, bool raw) {
  if (!raw) return ComputeMetrics(pred, ds.y);
  std::vector<double> p(pred.begin(), pred.end());
  std::vector<double> t = ds.y;
  for (double& v : p) v = scaler.InverseValue(v, ds.target);
  for (double& v : t) v = scaler.InverseValue(v, ds.target);
  return ComputeMetrics(p, t);
}

std::string ReportJson(const MetricsReport& r) {
  json j{{"model", r.model},
         {"dp", r.dp},
         {"sigma", r.dp ? json(r.sigma) : json(nullptr)},
         {"clip", r.dp ? json(r.clip) : json(nullptr)},
         {"delta", r.dp ? json(r.delta) : json(nullptr)},
         {"epsilon", r.epsilon ? Number(*r.epsilon) : json(nullptr)},
         {"seed", r.seed},
         {"param_count", r.param_count},
         {"n_train", r.n_train},
         {"n_test", r.n_test},
         {"epochs", r.epochs},
         {"steps", r.steps},
         {"scale", r.scale},
         {"test", MetricsJson(r.test)}};
  return j.dump(2) + "\n";
}

std::string EpochJson(const EpochRecord& e, bool with_wall_time) {
  json j{{"epoch", e.epoch},
         {"train_loss", Number(e.train_loss)},
         {"val", MetricsJson(e.val)},
         {"steps", e.steps},
         {"epsilon", e.epsilon ? Number(*e.epsilon) : json(nullptr)}};
  if (with_wall_time) j["wall_seconds"] = e.wall_seconds;
  return j.dump();
}

TrainResult Train(const ExperimentConfig& config, const PreparedData& data) {
  config.Validate();
  if (data.train.size() == 0) throw ContractError("empty training set");
  if (data.train.seq_len != config.model.seq_len) {
    throw ContractError("data windows have length " +
                        std::to_string(data.train.seq_len) + ", model expects " +
                        std::to_string(config.model.seq_len));
  }
  const auto start = std::chrono::steady_clock::now();
  const bool write = !config.out.empty();
  if (write) std::filesystem::create_directories(config.out);

  models::ModelConfig mc = config.model;
  mc.seed = config.seed;
  const auto model = models::MakeForecaster(mc);
  models::ParamStore params = model->InitParams();
  std::vector<double> flat = params.Flatten();
  dp::AdamState adam(flat.size(), config.lr);

  const std::size_t n = data.train.size();
  const std::size_t b = static_cast<std::size_t>(config.batch);
  const std::int64_t steps_per_epoch = static_cast<std::int64_t>((n + b - 1) / b);
  dp::PrivacyConfig privacy = config.privacy;
  privacy.sample_rate = std::min(1.0, static_cast<double>(b) / n);
  if (privacy.enabled && !privacy.Validate(n)) {
    std::cerr << "warning: delta " << privacy.delta
              << " is not below 1/N for N = " << n << "\n";
  }
  std::seed_seq noise_seed{static_cast<std::uint32_t>(config.seed),
                           static_cast<std::uint32_t>(config.seed >> 32),
                           0x6e6f6973u};
  dp::NoiseRng noise(noise_seed);

  std::ofstream epochs_out;
  if (write) {
    epochs_out.open(config.out / "epochs.jsonl", std::ios::binary | std::ios::trunc);
    if (!epochs_out) throw Error("cannot write epochs.jsonl");
  }

  TrainResult result;
  std::int64_t steps = 0;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const auto batches = data::BatchIndices(n, b, config.seed, epoch);
    double loss_sum = 0.0;
    for (std::size_t bi = 0; bi < batches.size(); ++bi) {
      const auto& idx = batches[bi];
      std::vector<models::SampleGradient> samples(idx.size());
      ParallelFor(idx.size(), config.threads, [&](std::size_t i) {
        samples[i] = models::LossAndGradient(*model, params,
                                             data.train.Window(idx[i]),
                                             data.train.y[idx[i]]);
      });
      std::vector<std::vector<double>> grads;
      grads.reserve(samples.size());
      bool finite = true;
      for (auto& s : samples) {
        finite = finite && std::isfinite(s.loss);
        loss_sum += s.loss;
        grads.push_back(std::move(s.grad));
      }
      if (!finite) {
        std::vector<double> norms;
        for (const auto& g : grads) norms.push_back(dp::L2Norm(g));
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0, mean = 0.0;
        for (double v : norms) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
          mean += v / norms.size();
        }
        if (write) {
          json diag{{"error", "non-finite loss"},
                    {"epoch", epoch},
                    {"batch", bi},
                    {"grad_norm", {{"min", Number(lo)},
                                   {"max", Number(hi)},
                                   {"mean", Number(mean)}}}};
          WriteText(config.out / "diagnostic.json", diag.dump(2) + "\n");
        }
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(bi));
      }
      const std::vector<double> g = privacy.enabled
                                        ? dp::AggregateNoisy(grads, privacy, noise)
                                        : dp::MeanGradient(grads);
      dp::AdamStep(adam, flat, g);
      params.Unflatten(flat);
    }
    steps += steps_per_epoch;

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(n);
    rec.val = Evaluate(PredictAll(*model, params, data.val, config.threads),
                       data.val, data.scaler, config.raw_metrics);
    rec.steps = steps;
    if (privacy.enabled) {
      rec.epsilon = dp::RdpEpsilon(privacy.sigma, steps, privacy.sample_rate,
                                   privacy.delta)
                        .epsilon;
    }
    rec.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    if (write) {
      epochs_out << EpochJson(rec, !config.deterministic) << "\n";
      epochs_out.flush();
    }
    result.epochs.push_back(rec);
  }

  result.test_predictions = PredictAll(*model, params, data.test, config.threads);
  MetricsReport& r = result.report;
  r.model = models::ToString(mc.kind);
  r.dp = privacy.enabled;
  r.sigma = privacy.sigma;
  r.clip = privacy.clip;
  r.delta = privacy.delta;
  if (privacy.enabled) r.epsilon = result.epochs.back().epsilon;
  r.seed = config.seed;
  r.param_count = flat.size();
  r.n_train = n;
  r.n_test = data.test.size();
  r.epochs = config.epochs;
  r.steps = steps;
  r.scale = config.raw_metrics ? "raw" : "standardized";
  r.test = Evaluate(result.test_predictions, data.test, data.scaler,
                    config.raw_metrics);
  result.params = params;

  if (write) {
    WriteText(config.out / "report.json", ReportJson(r));
    std::string csv = "index,y_true,y_pred\n";
    const std::size_t first_target = data.test.origin + data.test.seq_len;
    for (std::size_t i = 0; i < data.test.size(); ++i) {
      double t = data.test.y[i];
      double p = result.test_predictions[i];
      if (config.raw_metrics) {
        t = data.scaler.InverseValue(t, data.test.target);
        p = data.scaler.InverseValue(p, data.test.target);
      }
      csv += std::to_string(first_target + data.test.starts[i]) + "," +
             FormatDouble(t) + "," + FormatDouble(p) + "\n";
    }
    WriteText(config.out / "predictions.csv", csv);
    json meta{{"model", ModelJson(mc)},
              {"experiment", ExperimentJson(config)},
              {"scaler", {{"mean", data.scaler.mean()},
                          {"std", data.scaler.stddev()}}}};
    models::SaveParams(config.out / "checkpoint.qfc", params, meta.dump());
  }
  return result;
}

TrainResult Train(const ExperimentConfig& config) {
  config.Validate();
  return Train(config, PrepareData(config));
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  models::LoadedParams loaded = models::LoadParams(path);
  Checkpoint ck{ExperimentConfig{}, std::move(loaded.store)};
  try {
    const json meta = json::parse(loaded.metadata_json);
    ExperimentConfig& c = ck.config;
    c.model = ModelFromJson(meta.at("model"));
    const json& e = meta.at("experiment");
    c.epochs = e.at("epochs");
    c.batch = e.at("batch");
    c.lr = e.at("lr");
    c.privacy.enabled = e.at("dp");
    c.privacy.clip = e.at("clip");
    c.privacy.sigma = e.at("sigma");
    c.privacy.delta = e.at("delta");
    c.seed = e.at("seed");
    c.target = e.at("target");
    c.split = e.at("split");
    c.raw_metrics = e.at("raw_metrics");
    if (!e.at("subset").is_null()) c.subset = e.at("subset").get<std::size_t>();
    if (!e.at("eval_subset").is_null()) {
      c.eval_subset = e.at("eval_subset").get<std::size_t>();
    }
  } catch (const json::exception& ex) {
    throw IngestionError(path.string() + ": bad checkpoint metadata: " + ex.what());
  }
  return ck;
}

}  // namespace qfc::runner
