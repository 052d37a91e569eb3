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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfc/dp/accountant.h"
#include "qfc/errors.h"
#include "qfc/models/config.h"
#include "qfc/qsim/circuit_io.h"
#include "qfc/qsim/simulator.h"
#include "qfc/runner/gradcheck.h"
#include "qfc/runner/grid.h"
#include "qfc/runner/train.h"

namespace qfc::cli {
namespace {

// Raised for flag combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Fixed(double v, int digits) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void PrintMetrics(std::ostream& out, const runner::Metrics& m) {
  out << "mae=" << Fixed(m.mae, 6) << " mse=" << Fixed(m.mse, 6)
      << " rmse=" << Fixed(m.rmse, 6) << "\n";
}

struct Flags {
  std::vector<std::string> models;
  std::string data;
  std::vector<double> sigmas;
  bool no_dp = false;
  double clip = 1.0;
  double delta = 1e-5;
  int epochs = 30;
  int batch = 64;
  int seq_len = 16;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::size_t subset = 0;
  std::size_t eval_subset = 0;
  std::string target = "OT";
  std::string out = "results";
  int threads = 1;
  bool deterministic = false;
  bool raw_metrics = false;
};

void AddExperimentFlags(CLI::App* cmd, Flags& f, bool many_models) {
  auto* model = cmd->add_option("--model", f.models,
                                many_models ? "Model kinds (default: all)"
                                            : "Model kind");
  model->check(CLI::IsMember({"lstm", "qlstm", "qasa", "qrwkv"}));
  if (!many_models) model->required()->expected(1);
  cmd->add_option("--data", f.data, "ETT CSV path (default: $QDPTS_DATA)");
  cmd->add_option("--sigma", f.sigmas, "Noise multiplier (repeatable)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--no-dp", f.no_dp, "Train without differential privacy");
  cmd->add_option("--clip", f.clip, "Per-sample clip bound")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--delta", f.delta, "Target delta");
  cmd->add_option("--epochs", f.epochs, "Training epochs")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--batch", f.batch, "Batch size")->check(CLI::PositiveNumber);
  cmd->add_option("--seq-len", f.seq_len, "Input window length")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lr", f.lr, "Adam learning rate")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--subset", f.subset, "Keep the last N training windows")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--eval-subset", f.eval_subset,
                  "Keep the last N validation and test windows")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--target", f.target, "Target column");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--threads", f.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--deterministic", f.deterministic,
                "Ordered reduction, no wall-clock fields in output");
  cmd->add_flag("--raw-metrics", f.raw_metrics,
                "Report metrics in the target's original units");
}

std::string DataPath(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("QDPTS_DATA"); env && *env) return env;
  throw UsageError("--data is required (or set QDPTS_DATA)");
}

runner::ExperimentConfig ToExperiment(const Flags& f, models::ModelKind kind) {
  runner::ExperimentConfig c;
  c.model = models::ModelConfig::Paper(kind);
  c.model.seq_len = f.seq_len;
  c.epochs = f.epochs;
  c.batch = f.batch;
  c.lr = f.lr;
  c.privacy.clip = f.clip;
  c.privacy.delta = f.delta;
  c.seed = f.seed;
  c.data = DataPath(f.data);
  c.out = f.out;
  if (f.subset > 0) c.subset = f.subset;
  if (f.eval_subset > 0) c.eval_subset = f.eval_subset;
  c.target = f.target;
  c.threads = f.threads;
  c.deterministic = f.deterministic;
  c.raw_metrics = f.raw_metrics;
  return c;
}

int RunTrain(const Flags& f, std::ostream& out) {
  if (f.no_dp && !f.sigmas.empty()) {
    throw UsageError("--no-dp and --sigma are mutually exclusive");
  }
  if (f.sigmas.size() > 1) throw UsageError("train takes a single --sigma");
  runner::ExperimentConfig c =
      ToExperiment(f, models::ParseModelKind(f.models.front()));
  if (!f.sigmas.empty()) {
    c.privacy.enabled = true;
    c.privacy.sigma = f.sigmas.front();
  }
  const runner::TrainResult r = runner::Train(c);
  for (const auto& e : r.epochs) {
    out << "epoch " << e.epoch << " train_loss=" << Fixed(e.train_loss, 6)
        << " val_mae=" << Fixed(e.val.mae, 6);
    if (e.epsilon) out << " epsilon=" << Fixed(*e.epsilon, 4);
    out << "\n";
  }
  out << "test ";
  PrintMetrics(out, r.report.test);
  if (r.report.epsilon) out << "epsilon=" << Fixed(*r.report.epsilon, 6) << "\n";
  out << "wrote " << c.out.string() << "\n";
  return kExitOk;
}

int RunGridCommand(const Flags& f, std::ostream& out) {
  runner::GridConfig g;
  std::vector<std::string> names = f.models;
  if (names.empty()) names = {"lstm", "qlstm", "qasa", "qrwkv"};
  for (const auto& n : names) g.models.push_back(models::ParseModelKind(n));
  g.base = ToExperiment(f, g.models.front());
  if (f.no_dp) {
    if (!f.sigmas.empty()) {
      throw UsageError("--no-dp and --sigma are mutually exclusive");
    }
    g.sigmas.clear();
  } else if (!f.sigmas.empty()) {
    g.sigmas = f.sigmas;
  }
  const auto cells = runner::RunGrid(g);
  out << runner::FormatTable(cells);
  for (const auto& c : cells) {
    if (!c.ok) return kExitFailure;
  }
  return kExitOk;
}

int RunEval(const std::string& checkpoint, const std::string& data_flag,
            int threads, std::ostream& out) {
  runner::Checkpoint ck = runner::LoadCheckpoint(checkpoint);
  ck.config.data = DataPath(data_flag);
  ck.config.threads = threads;
  const runner::PreparedData data = runner::PrepareData(ck.config);
  const auto model = models::MakeForecaster(ck.config.model);
  const auto pred = runner::PredictAll(*model, ck.params, data.test, threads);
  out << "model=" << models::ToString(ck.config.model.kind)
      << " n_test=" << data.test.size() << "\n";
  PrintMetrics(out, runner::Evaluate(pred, data.test, data.scaler,
                                     ck.config.raw_metrics));
  return kExitOk;
}

int RunAccountant(double sigma, std::int64_t steps, double rate, double delta,
                  std::ostream& out) {
  const dp::RdpResult r = dp::RdpEpsilon(sigma, steps, rate, delta);
  out << "epsilon=" << Fixed(r.epsilon, 6) << "\n";
  out << "alpha_star=" << (std::isnan(r.alpha_star) ? "nan" : Fixed(r.alpha_star, 6))
      << "\n";
  return kExitOk;
}

void PrintStats(std::ostream& out, const std::string& label,
                const runner::ErrorStats& s) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%-26s n=%zu max_abs=%.3e max_rel=%.3e p99_rel=%.3e\n",
                label.c_str(), s.count, s.max_abs, s.max_rel, s.p99_rel);
  out << buf;
}

int RunGradCheck(const std::string& model_name, int instances, int windows,
                 std::uint64_t seed, std::ostream& out) {
  const models::ModelKind kind = models::ParseModelKind(model_name);
  double worst = 0.0;
  bool ok = true;
  if (kind != models::ModelKind::kLstm) {
    const qsim::CircuitTemplate tpl =
        runner::FamilyCircuit(models::ModelConfig::Paper(kind));
    const runner::CircuitCheck c = runner::CheckCircuit(tpl, instances, seed);
    PrintStats(out, "circuit adjoint vs shift", c.adjoint_vs_shift);
    PrintStats(out, "circuit adjoint vs fd", c.adjoint_vs_fd);
    PrintStats(out, "circuit shift vs fd", c.shift_vs_fd);
    ok = ok && c.adjoint_vs_shift.max_abs < 1e-8;
    worst = std::max({worst, c.adjoint_vs_fd.max_rel, c.shift_vs_fd.max_rel});
  }
  const runner::ModelCheck m =
      runner::CheckModel(models::ModelConfig::Tiny(kind), windows, seed);
  PrintStats(out, "model backprop vs fd", m.backprop_vs_fd);
  worst = std::max(worst, m.backprop_vs_fd.max_rel);
  ok = ok && worst < 1e-3;
  char buf[64];
  std::snprintf(buf, sizeof buf, "max_relative_error=%.3e\n", worst);
  out << buf << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitFailure;
}

int RunSimulate(const std::string& path, std::ostream& out) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const qsim::CircuitProgram p = qsim::ParseCircuitProgram(text);
  const std::vector<double> z = qsim::Measure(p.tpl, p.params, p.inputs);
  char buf[80];
  for (std::size_t k = 0; k < z.size(); ++k) {
    std::snprintf(buf, sizeof buf, "Z%d=%.12f\n", p.tpl.measured_wires[k], z[k]);
    out << buf;
  }
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Differentially private quantum-classical forecasting", "qfc"};
  app.require_subcommand(1);

  Flags train_flags;
  CLI::App* train = app.add_subcommand("train", "Train one model");
  AddExperimentFlags(train, train_flags, false);

  Flags grid_flags;
  CLI::App* grid = app.add_subcommand("grid", "Train every model and privacy setting");
  AddExperimentFlags(grid, grid_flags, true);

  std::string checkpoint, eval_data;
  int eval_threads = 1;
  CLI::App* eval = app.add_subcommand("eval", "Score a checkpoint on the test split");
  eval->add_option("--checkpoint", checkpoint, "checkpoint.qfc path")->required();
  eval->add_option("--data", eval_data, "ETT CSV path (default: $QDPTS_DATA)");
  eval->add_option("--threads", eval_threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  double acc_sigma = 1.0, acc_rate = 0.01, acc_delta = 1e-5;
  std::int64_t acc_steps = 1000;
  CLI::App* accountant = app.add_subcommand("accountant", "Closed-form RDP epsilon");
  accountant->add_option("--sigma", acc_sigma, "Noise multiplier")->required();
  accountant->add_option("--steps", acc_steps, "Number of steps T")->required();
  accountant->add_option("--sample-rate", acc_rate, "Sampling rate")->required();
  accountant->add_option("--delta", acc_delta, "Target delta");

  std::string gc_model;
  int gc_instances = 10, gc_windows = 2;
  std::uint64_t gc_seed = 0;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "Compare adjoint, shift-rule and finite-difference gradients");
  gradcheck->add_option("--model", gc_model, "Model kind")
      ->required()
      ->check(CLI::IsMember({"lstm", "qlstm", "qasa", "qrwkv"}));
  gradcheck->add_option("--instances", gc_instances, "Random circuit instances")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--windows", gc_windows, "Random model inputs")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--seed", gc_seed, "Random seed");

  std::string circuit;
  CLI::App* simulate = app.add_subcommand("simulate", "Print <Z> of a circuit");
  simulate->add_option("--circuit", circuit, "Circuit JSON path, or - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (train->parsed()) return RunTrain(train_flags, out);
    if (grid->parsed()) return RunGridCommand(grid_flags, out);
    if (eval->parsed()) return RunEval(checkpoint, eval_data, eval_threads, out);
    if (accountant->parsed()) {
      return RunAccountant(acc_sigma, acc_steps, acc_rate, acc_delta, out);
    }
    if (gradcheck->parsed()) {
      return RunGradCheck(gc_model, gc_instances, gc_windows, gc_seed, out);
    }
    if (simulate->parsed()) return RunSimulate(circuit, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n";
    for (CLI::App* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qfc::cli
