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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/dense_oracle.h"
#include "qfc/errors.h"
#include "qfc/models/forecaster.h"
#include "qfc/qsim/templates.h"

namespace qfc::models {
namespace {

using Vec = std::vector<double>;

// Plain-loop building blocks for the reference forwards below.
Vec Get(const ParamStore& s, const std::string& name) {
  const int i = s.IndexOf(name);
  if (i < 0) throw std::logic_error("missing parameter " + name);
  return s.value(i).vec();
}

Vec MatVec(const Vec& w, const Vec& x, std::size_t rows) {
  const std::size_t cols = x.size();
  Vec y(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) y[r] += w[r * cols + c] * x[c];
  }
  return y;
}

Vec Aff(const ParamStore& s, const std::string& w, const std::string& b,
        const Vec& x) {
  const Vec bias = Get(s, b);
  Vec y = MatVec(Get(s, w), x, bias.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += bias[i];
  return y;
}

double Sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double GeluRef(double x) { return 0.5 * x * (1.0 + std::erf(x / std::sqrt(2.0))); }

Vec LayerNormRef(const Vec& x, const Vec& g, const Vec& b) {
  double mean = 0.0, var = 0.0;
  for (double v : x) mean += v / x.size();
  for (double v : x) var += (v - mean) * (v - mean) / x.size();
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = (x[i] - mean) / std::sqrt(var + 1e-5) * g[i] + b[i];
  }
  return y;
}

Vec Circuit(const qsim::CircuitTemplate& tpl, const Vec& params, const Vec& x) {
  return oracle::ExpectZ(oracle::Run(tpl, params, x), tpl.measured_wires);
}

Vec Row(const ad::Tensor& window, int t) {
  const int f = window.dim(1);
  return Vec(window.vec().begin() + t * f, window.vec().begin() + (t + 1) * f);
}

ad::Tensor RandomWindow(const ModelConfig& c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ad::Tensor w({c.seq_len, c.n_features});
  for (double& v : w.vec()) v = n(rng);
  return w;
}

// Randomizes every parameter so biases and gains are exercised too.
ParamStore RandomParams(const Forecaster& model, std::mt19937_64& rng) {
  ParamStore s = model.InitParams();
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  Vec flat = s.Flatten();
  for (double& v : flat) v = u(rng);
  s.Unflatten(flat);
  return s;
}

double QlstmRef(const ModelConfig& c, const ParamStore& s, const ad::Tensor& x) {
  const int q = c.n_features + c.qlstm_hidden;
  const auto tpl = qsim::QlstmCircuit(q, c.qlstm_blocks, c.qlstm_hidden);
  Vec h(c.qlstm_hidden, 0.0), cell(c.qlstm_hidden, 0.0);
  for (int t = 0; t < c.seq_len; ++t) {
    Vec v = Row(x, t);
    v.insert(v.end(), h.begin(), h.end());
    Vec gate[4];
    const char* names[4] = {"f", "i", "o", "g"};
    for (int g = 0; g < 4; ++g) {
      const std::string p = std::string("qlstm.") + names[g] + ".";
      gate[g] = Circuit(tpl, Get(s, p + "qnn"), Aff(s, p + "nn.w", p + "nn.b", v));
      for (double& z : gate[g]) z = g == 3 ? std::tanh(z) : Sig(z);
    }
    for (int k = 0; k < c.qlstm_hidden; ++k) {
      cell[k] = gate[0][k] * cell[k] + gate[1][k] * gate[3][k];
      h[k] = gate[2][k] * std::tanh(cell[k]);
    }
  }
  return Aff(s, "head.w", "head.b", h)[0];
}

double QasaRef(const ModelConfig& c, const ParamStore& s, const ad::Tensor& x) {
  const int n = c.qasa_qubits;
  const auto tpl = qsim::QasaCircuit(n, c.qasa_layers, c.qasa_d_model);
  std::vector<Vec> q, k, v;
  for (int t = 0; t < c.seq_len; ++t) {
    const Vec e = Aff(s, "qasa.embed.w", "qasa.embed.b", Row(x, t));
    q.push_back(Circuit(tpl, Get(s, "qasa.vqc_q"), e));
    k.push_back(Circuit(tpl, Get(s, "qasa.vqc_k"), e));
    v.push_back(Circuit(tpl, Get(s, "qasa.vqc_v"), e));
  }
  const int T = c.seq_len;
  Vec pooled(n, 0.0);
  for (int i = 0; i < T; ++i) {
    Vec score(T);
    double mx = -1e300;
    for (int j = 0; j < T; ++j) {
      score[j] = 0.0;
      for (int d = 0; d < n; ++d) score[j] += q[i][d] * k[j][d];
      score[j] /= std::sqrt(static_cast<double>(n));
      mx = std::max(mx, score[j]);
    }
    double z = 0.0;
    for (double& sc : score) z += (sc = std::exp(sc - mx));
    for (int j = 0; j < T; ++j) {
      for (int d = 0; d < n; ++d) pooled[d] += score[j] / z * v[j][d] / T;
    }
  }
  Vec hidden = Aff(s, "head.w1", "head.b1", pooled);
  for (double& hv : hidden) hv = GeluRef(hv);
  return Aff(s, "head.w2", "head.b2", hidden)[0];
}

double QrwkvRef(const ModelConfig& c, const ParamStore& s, const ad::Tensor& x) {
  const int d = c.qrwkv_d;
  const auto tpl = qsim::QrwkvCircuit(c.qrwkv_qubits, c.qrwkv_layers);
  const Vec tau = Get(s, "qrwkv.time.tau");
  Vec m(d, 0.0), h_prev(d, 0.0), y;
  std::vector<Vec> keys, values;
  for (int t = 0; t < c.seq_len; ++t) {
    const Vec xt = Aff(s, "qrwkv.in.w", "qrwkv.in.b", Row(x, t));
    const Vec qemb = Circuit(tpl, Get(s, "qrwkv.vqc"),
                             Aff(s, "qrwkv.proj.w", "qrwkv.proj.b", xt));
    const Vec q = Aff(s, "qrwkv.q.w", "qrwkv.q.b", qemb);
    keys.push_back(Aff(s, "qrwkv.k.w", "qrwkv.k.b", qemb));
    values.push_back(Aff(s, "qrwkv.v.w", "qrwkv.v.b", qemb));

    const Vec u = MatVec(Get(s, "qrwkv.time.wk"), xt, d);
    const Vec v = MatVec(Get(s, "qrwkv.time.wv"), xt, d);
    Vec xm = xt;
    xm.insert(xm.end(), m.begin(), m.end());
    const Vec r = Aff(s, "qrwkv.time.wr", "qrwkv.time.br", xm);
    Vec y_time(d);
    for (int i = 0; i < d; ++i) {
      m[i] = std::exp(-1.0 / tau[i]) * m[i] + v[i];
      y_time[i] = Sig(r[i]) * u[i] * m[i];
    }

    Vec mlp = Aff(s, "qrwkv.chan.mlp.w", "qrwkv.chan.mlp.b", xt);
    for (double& a : mlp) a = GeluRef(a);
    const Vec z1 = MatVec(Get(s, "qrwkv.chan.w1"), qemb, d);
    const Vec z2 = Aff(s, "qrwkv.chan.w2", "qrwkv.chan.b1", mlp);
    Vec h(d), hh(d);
    for (int i = 0; i < d; ++i) {
      h[i] = GeluRef(z1[i] + z2[i]);
      hh[i] = h[i] * h_prev[i];
    }
    const Vec cm = Aff(s, "qrwkv.chan.w3", "qrwkv.chan.b2", hh);
    h_prev = h;

    Vec score(keys.size());
    double mx = -1e300, zsum = 0.0;
    for (std::size_t j = 0; j < keys.size(); ++j) {
      score[j] = 0.0;
      for (int i = 0; i < d; ++i) score[j] += q[i] * keys[j][i];
      mx = std::max(mx, score[j]);
    }
    for (double& sc : score) zsum += (sc = std::exp(sc - mx));
    Vec y_attn(d, 0.0);
    for (std::size_t j = 0; j < keys.size(); ++j) {
      for (int i = 0; i < d; ++i) y_attn[i] += score[j] / zsum * values[j][i];
    }

    Vec a(d);
    for (int i = 0; i < d; ++i) a[i] = xt[i] + y_time[i];
    const Vec h1 = LayerNormRef(a, Get(s, "qrwkv.ln1.gain"), Get(s, "qrwkv.ln1.bias"));
    for (int i = 0; i < d; ++i) a[i] = h1[i] + cm[i] + y_attn[i];
    y = LayerNormRef(a, Get(s, "qrwkv.ln2.gain"), Get(s, "qrwkv.ln2.bias"));
  }
  return Aff(s, "head.w", "head.b", y)[0];
}

double LstmRef(const ModelConfig& c, const ParamStore& s, const ad::Tensor& x) {
  const int H = c.lstm_hidden;
  std::vector<Vec> h(c.lstm_layers, Vec(H, 0.0)), cell(c.lstm_layers, Vec(H, 0.0));
  for (int t = 0; t < c.seq_len; ++t) {
    Vec in = Row(x, t);
    for (int l = 0; l < c.lstm_layers; ++l) {
      const std::string p = "lstm" + std::to_string(l) + ".";
      const Vec a = MatVec(Get(s, p + "w_ih"), in, 4 * H);
      const Vec b = MatVec(Get(s, p + "w_hh"), h[l], 4 * H);
      const Vec bias = Get(s, p + "b");
      for (int k = 0; k < H; ++k) {
        const auto pre = [&](int g) { return a[g * H + k] + b[g * H + k] + bias[g * H + k]; };
        const double i = Sig(pre(0)), f = Sig(pre(1)), g = std::tanh(pre(2)),
                     o = Sig(pre(3));
        cell[l][k] = f * cell[l][k] + i * g;
        h[l][k] = o * std::tanh(cell[l][k]);
      }
      in = h[l];
    }
  }
  return Aff(s, "head.w", "head.b", h.back())[0];
}

ModelConfig Small(ModelKind kind) {
  ModelConfig c = ModelConfig::Tiny(kind);
  c.seq_len = 4;
  c.n_features = 3;
  c.lstm_hidden = 3;
  c.lstm_layers = 2;
  c.qasa_qubits = 3;
  c.qasa_d_model = 5;
  c.qasa_layers = 2;
  c.qrwkv_qubits = 3;
  c.qrwkv_d = 4;
  c.qrwkv_layers = 2;
  return c;
}

TEST(ConfigTest, PaperSizes) {
  EXPECT_EQ(ModelConfig::Paper(ModelKind::kQrwkv).QubitCount(), 4);
  EXPECT_EQ(ModelConfig::Paper(ModelKind::kQasa).QubitCount(), 9);
  EXPECT_EQ(ModelConfig::Paper(ModelKind::kQlstm).QubitCount(), 11);
  EXPECT_EQ(ModelConfig::Paper(ModelKind::kLstm).seq_len, 16);
  EXPECT_EQ(ModelConfig::Paper(ModelKind::kLstm).n_features, 7);
}

TEST(ConfigTest, ParseAndValidate) {
  EXPECT_EQ(ParseModelKind("qasa"), ModelKind::kQasa);
  EXPECT_EQ(ToString(ModelKind::kQrwkv), "qrwkv");
  EXPECT_THROW(ParseModelKind("gru"), ConfigError);
  ModelConfig bad = ModelConfig::Paper(ModelKind::kQasa);
  bad.qasa_d_model = 1000;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = ModelConfig::Paper(ModelKind::kQlstm);
  bad.qlstm_hidden = 12;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = ModelConfig::Paper(ModelKind::kLstm);
  bad.seq_len = 0;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(ParamStoreTest, FlattenRoundTrip) {
  ParamStore s;
  s.Add("a", ad::Tensor::Matrix(2, 2, {1, 2, 3, 4}));
  s.Add("b", ad::Tensor::Vector({5, 6}));
  EXPECT_EQ(s.total_dim(), 6u);
  EXPECT_EQ(s.offset(1), 4u);
  EXPECT_THROW(s.Add("a", ad::Tensor::Vector({1})), ConfigError);
  Vec flat = s.Flatten();
  EXPECT_EQ(flat, (Vec{1, 2, 3, 4, 5, 6}));
  flat[5] = 0.1 + 0.2;
  s.Unflatten(flat);
  EXPECT_EQ(s.Flatten(), flat);
  EXPECT_THROW(s.Unflatten(Vec{1.0}), ContractError);
  EXPECT_EQ(s.IndexOf("zz"), -1);
}

TEST(ParamStoreTest, SaveLoadBitExact) {
  const auto dir = std::filesystem::temp_directory_path() / "qfc_models_test";
  std::filesystem::create_directories(dir);
  const ParamStore s = InitParams(ModelConfig::Paper(ModelKind::kQlstm));
  SaveParams(dir / "p.qfc", s, R"({"note":"x"})");
  const LoadedParams back = LoadParams(dir / "p.qfc");
  EXPECT_EQ(back.store.Flatten(), s.Flatten());
  ASSERT_EQ(back.store.num_segments(), s.num_segments());
  for (std::size_t i = 0; i < s.num_segments(); ++i) {
    EXPECT_EQ(back.store.name(i), s.name(i));
    EXPECT_EQ(back.store.value(i).shape(), s.value(i).shape());
  }
  EXPECT_NE(back.metadata_json.find("note"), std::string::npos);

  // Truncated payload.
  std::string bytes;
  {
    std::ifstream in(dir / "p.qfc", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  {
    std::ofstream out(dir / "bad.qfc", std::ios::binary);
    out << bytes.substr(0, bytes.size() - 5);
  }
  EXPECT_THROW(LoadParams(dir / "bad.qfc"), IngestionError);
  EXPECT_THROW(LoadParams(dir / "missing.qfc"), IngestionError);
  std::filesystem::remove_all(dir);
}

TEST(InitTest, DeterministicFiniteAndScaled) {
  for (ModelKind k : {ModelKind::kLstm, ModelKind::kQlstm, ModelKind::kQasa,
                      ModelKind::kQrwkv}) {
    ModelConfig c = ModelConfig::Paper(k);
    c.seed = 77;
    const ParamStore a = InitParams(c), b = InitParams(c);
    EXPECT_EQ(a.Flatten(), b.Flatten());
    EXPECT_TRUE(a.AllFinite());
    c.seed = 78;
    EXPECT_NE(InitParams(c).Flatten(), a.Flatten());
  }
  const auto model = MakeForecaster(ModelConfig::Paper(ModelKind::kQrwkv));
  const ParamStore s = model->InitParams();
  for (std::size_t i = 0; i < s.num_segments(); ++i) {
    const auto& spec = model->layout()[i];
    for (double v : s.value(i).vec()) {
      switch (spec.init) {
        case InitKind::kUniformFanIn:
          EXPECT_LE(std::abs(v), 1.0 / std::sqrt(spec.shape[1]));
          break;
        case InitKind::kZero:
          EXPECT_EQ(v, 0.0);
          break;
        case InitKind::kOne:
          EXPECT_EQ(v, 1.0);
          break;
        case InitKind::kRotation:
          EXPECT_GE(v, 0.0);
          EXPECT_LE(v, 0.2 * std::numbers::pi);
          break;
        case InitKind::kDecayTau:
          EXPECT_NEAR(std::exp(-1.0 / v), 0.9, 1e-12);
          break;
      }
    }
  }
}

TEST(ParamCountTest, Qlstm) {
  // Four 55-slot circuits, four 11->11 affines, 4->1 head.
  const auto model = MakeForecaster(ModelConfig::Paper(ModelKind::kQlstm));
  EXPECT_EQ(model->ParamCount(), 4u * 55 + 4u * (11 * 11 + 11) + 5);
  EXPECT_EQ(model->ParamCount(), 753u);
  EXPECT_EQ(InitParams(ModelConfig::Paper(ModelKind::kQlstm)).total_dim(), 753u);
}

TEST(ParamCountTest, Others) {
  // Two LSTM layers of 64 on 7 inputs plus the 64->1 head.
  const std::size_t lstm = 4 * 64 * (7 + 64 + 1) + 4 * 64 * (64 + 64 + 1) + 65;
  EXPECT_EQ(MakeForecaster(ModelConfig::Paper(ModelKind::kLstm))->ParamCount(),
            lstm);
  // Embedding 7->16, three 18-slot circuits, head 9->32->1.
  const std::size_t qasa = 16 * 8 + 3 * 18 + 32 * 10 + 33;
  EXPECT_EQ(MakeForecaster(ModelConfig::Paper(ModelKind::kQasa))->ParamCount(),
            qasa);
}

TEST(ForwardTest, ShapeContract) {
  std::mt19937_64 rng(1);
  for (ModelKind k : {ModelKind::kLstm, ModelKind::kQlstm, ModelKind::kQasa,
                      ModelKind::kQrwkv}) {
    const ModelConfig c = ModelConfig::Paper(k);
    const auto model = MakeForecaster(c);
    const ParamStore s = model->InitParams();
    const ad::Tensor x = RandomWindow(c, rng);
    const double a = Predict(*model, s, x);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_EQ(Predict(*model, s, x), a) << "forward not deterministic";
    EXPECT_THROW(Predict(*model, s, ad::Tensor({15, 7})), ContractError);
    EXPECT_THROW(Predict(*model, s, ad::Tensor({16, 6})), ContractError);
  }
}

TEST(LstmTest, ZeroParamsZeroInput) {
  const ModelConfig c = ModelConfig::Paper(ModelKind::kLstm);
  const auto model = MakeForecaster(c);
  ParamStore s = model->InitParams();
  s.Unflatten(Vec(s.total_dim(), 0.0));
  EXPECT_EQ(Predict(*model, s, ad::Tensor({16, 7})), 0.0);
}

TEST(LstmTest, ScalarCellByHand) {
  ModelConfig c = ModelConfig::Tiny(ModelKind::kLstm);
  c.seq_len = 1;
  c.n_features = 1;
  c.lstm_hidden = 1;
  c.lstm_layers = 1;
  const auto model = MakeForecaster(c);
  ParamStore s = model->InitParams();
  // w_ih (i,f,g,o) = (0.5,-0.3,0.8,0.2), w_hh = 0, b = (0.1,0,-0.2,0.3),
  // head w = 2, b = 0.1; x = 1.5.
  s.value(s.IndexOf("lstm0.w_ih")).vec() = {0.5, -0.3, 0.8, 0.2};
  s.value(s.IndexOf("lstm0.w_hh")).vec() = {0.0, 0.0, 0.0, 0.0};
  s.value(s.IndexOf("lstm0.b")).vec() = {0.1, 0.0, -0.2, 0.3};
  s.value(s.IndexOf("head.w")).vec() = {2.0};
  s.value(s.IndexOf("head.b")).vec() = {0.1};
  const double i = 1 / (1 + std::exp(-0.85));
  const double g = std::tanh(1.0);
  const double o = 1 / (1 + std::exp(-0.6));
  const double h1 = o * std::tanh(i * g);
  EXPECT_NEAR(Predict(*model, s, ad::Tensor({1, 1}, {1.5})), 2 * h1 + 0.1, 1e-15);
}

TEST(LstmTest, MatchesReference) {
  std::mt19937_64 rng(2);
  const ModelConfig c = Small(ModelKind::kLstm);
  const auto model = MakeForecaster(c);
  const ParamStore s = RandomParams(*model, rng);
  const ad::Tensor x = RandomWindow(c, rng);
  EXPECT_NEAR(Predict(*model, s, x), LstmRef(c, s, x), 1e-12);
}

TEST(QlstmTest, MatchesReference) {
  std::mt19937_64 rng(3);
  const ModelConfig c = Small(ModelKind::kQlstm);
  const auto model = MakeForecaster(c);
  const ParamStore s = RandomParams(*model, rng);
  const ad::Tensor x = RandomWindow(c, rng);
  EXPECT_NEAR(Predict(*model, s, x), QlstmRef(c, s, x), 1e-10);
}

TEST(QlstmTest, ZeroPreactivationGivesHalfGates) {
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQlstm);
  const auto model = MakeForecaster(c);
  ParamStore s = model->InitParams();
  s.Unflatten(Vec(s.total_dim(), 0.0));
  Trace trace;
  Predict(*model, s, ad::Tensor({16, 7}), &trace);
  for (const char* g : {"f", "i", "o"}) {
    for (const auto& step : trace.at(g)) {
      for (double v : step.vec()) EXPECT_NEAR(v, 0.5, 1e-12) << g;
    }
  }
}

TEST(QlstmTest, GateRangesAndCellUpdate) {
  std::mt19937_64 rng(4);
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQlstm);
  const auto model = MakeForecaster(c);
  const ParamStore s = model->InitParams();
  Trace tr;
  Predict(*model, s, RandomWindow(c, rng), &tr);
  ASSERT_EQ(tr.at("c").size(), 16u);
  for (int t = 0; t < 16; ++t) {
    for (int k = 0; k < 4; ++k) {
      for (const char* g : {"f", "i", "o"}) {
        EXPECT_GT(tr.at(g)[t][k], 0.0);
        EXPECT_LT(tr.at(g)[t][k], 1.0);
      }
      EXPECT_LT(std::abs(tr.at("g")[t][k]), 1.0);
      EXPECT_LT(std::abs(tr.at("tanh_c")[t][k]), 1.0);
      const double prev = t == 0 ? 0.0 : tr.at("c")[t - 1][k];
      EXPECT_EQ(tr.at("c")[t][k],
                tr.at("f")[t][k] * prev + tr.at("i")[t][k] * tr.at("g")[t][k]);
      EXPECT_EQ(tr.at("h")[t][k], tr.at("o")[t][k] * tr.at("tanh_c")[t][k]);
    }
  }
}

TEST(QasaTest, MatchesReference) {
  std::mt19937_64 rng(5);
  const ModelConfig c = Small(ModelKind::kQasa);
  const auto model = MakeForecaster(c);
  const ParamStore s = RandomParams(*model, rng);
  const ad::Tensor x = RandomWindow(c, rng);
  EXPECT_NEAR(Predict(*model, s, x), QasaRef(c, s, x), 1e-12);
}

TEST(QasaTest, ZeroTrainablesMatchReferenceAtPaperSize) {
  std::mt19937_64 rng(6);
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQasa);
  const auto model = MakeForecaster(c);
  ParamStore s = model->InitParams();
  for (const char* n : {"qasa.vqc_q", "qasa.vqc_k", "qasa.vqc_v"}) {
    for (double& v : s.value(s.IndexOf(n)).vec()) v = 0.0;
  }
  const ad::Tensor x = RandomWindow(c, rng);
  EXPECT_NEAR(Predict(*model, s, x), QasaRef(c, s, x), 1e-12);
}

TEST(QasaTest, IdenticalTokensGiveUniformAttention) {
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQasa);
  const auto model = MakeForecaster(c);
  const ParamStore s = model->InitParams();
  ad::Tensor x({16, 7});
  for (int t = 0; t < 16; ++t) {
    for (int f = 0; f < 7; ++f) x.at(t, f) = 0.1 * (f + 1);
  }
  Trace tr;
  Predict(*model, s, x, &tr);
  const ad::Tensor& a = tr.at("attention").at(0);
  ASSERT_EQ(a.shape(), (ad::Shape{16, 16}));
  for (int r = 0; r < 16; ++r) {
    double sum = 0.0;
    for (int j = 0; j < 16; ++j) {
      EXPECT_NEAR(a.at(r, j), 1.0 / 16, 1e-12);
      sum += a.at(r, j);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(QasaTest, AttentionRowsSumToOne) {
  std::mt19937_64 rng(7);
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQasa);
  const auto model = MakeForecaster(c);
  Trace tr;
  Predict(*model, model->InitParams(), RandomWindow(c, rng), &tr);
  const ad::Tensor& a = tr.at("attention").at(0);
  for (int r = 0; r < 16; ++r) {
    double sum = 0.0;
    for (int j = 0; j < 16; ++j) sum += a.at(r, j);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(QasaTest, ZeroEmbeddingIsDegenerate) {
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQasa);
  const auto model = MakeForecaster(c);
  ParamStore s = model->InitParams();
  s.Unflatten(Vec(s.total_dim(), 0.0));
  EXPECT_THROW(Predict(*model, s, ad::Tensor({16, 7})), DegenerateInputError);
}

TEST(QrwkvTest, MatchesReference) {
  std::mt19937_64 rng(8);
  const ModelConfig c = Small(ModelKind::kQrwkv);
  const auto model = MakeForecaster(c);
  ParamStore s = RandomParams(*model, rng);
  for (double& v : s.value(s.IndexOf("qrwkv.time.tau")).vec()) v = 1.0 + std::abs(v) * 5;
  const ad::Tensor x = RandomWindow(c, rng);
  EXPECT_NEAR(Predict(*model, s, x), QrwkvRef(c, s, x), 1e-12);
}

TEST(QrwkvTest, PaperSizeMatchesReference) {
  std::mt19937_64 rng(9);
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQrwkv);
  const auto model = MakeForecaster(c);
  const ParamStore s = model->InitParams();
  const ad::Tensor x = RandomWindow(c, rng);
  EXPECT_NEAR(Predict(*model, s, x), QrwkvRef(c, s, x), 1e-12);
}

// Sets W^V to the identity, the input map to pass feature 0 into every
// channel, and τ to give the requested decay.
ParamStore AccumulatorParams(const Forecaster& model, double decay) {
  const int d = model.config().qrwkv_d;
  const int f = model.config().n_features;
  ParamStore s = model.InitParams();
  Vec& in = s.value(s.IndexOf("qrwkv.in.w")).vec();
  std::fill(in.begin(), in.end(), 0.0);
  for (int i = 0; i < d; ++i) in[i * f] = 1.0;
  Vec& wv = s.value(s.IndexOf("qrwkv.time.wv")).vec();
  std::fill(wv.begin(), wv.end(), 0.0);
  for (int i = 0; i < d; ++i) wv[i * d + i] = 1.0;
  const double tau = decay == 0.0 ? 1e-3 : -1.0 / std::log(decay);
  for (double& v : s.value(s.IndexOf("qrwkv.time.tau")).vec()) v = tau;
  return s;
}

TEST(QrwkvTest, GeometricAccumulation) {
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQrwkv);
  const auto model = MakeForecaster(c);
  const ParamStore s = AccumulatorParams(*model, 0.5);
  ad::Tensor x({16, 7});
  for (int t = 0; t < 16; ++t) x.at(t, 0) = 1.0;
  Trace tr;
  Predict(*model, s, x, &tr);
  for (double v : tr.at("m")[0].vec()) EXPECT_NEAR(v, 1.0, 1e-15);
  for (double v : tr.at("m")[1].vec()) EXPECT_NEAR(v, 1.5, 1e-15);
  for (double v : tr.at("m")[2].vec()) EXPECT_NEAR(v, 1.75, 1e-15);
}

TEST(QrwkvTest, ZeroDecayHasNoMemory) {
  std::mt19937_64 rng(10);
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQrwkv);
  const auto model = MakeForecaster(c);
  const ParamStore s = AccumulatorParams(*model, 0.0);
  const ad::Tensor x = RandomWindow(c, rng);
  Trace tr;
  Predict(*model, s, x, &tr);
  for (int t = 0; t < 16; ++t) {
    for (double v : tr.at("m")[t].vec()) EXPECT_EQ(v, x.at(t, 0));
  }
}

TEST(QrwkvTest, CausalAttention) {
  std::mt19937_64 rng(11);
  const ModelConfig c = ModelConfig::Paper(ModelKind::kQrwkv);
  const auto model = MakeForecaster(c);
  const ParamStore s = model->InitParams();
  ad::Tensor x = RandomWindow(c, rng);
  Trace before;
  Predict(*model, s, x, &before);
  ASSERT_EQ(before.at("alpha")[0].vec(), Vec{1.0});
  for (int t = 0; t < 16; ++t) {
    EXPECT_EQ(before.at("alpha")[t].size(), static_cast<std::size_t>(t + 1));
  }
  const int cut = 9;
  for (int t = cut + 1; t < 16; ++t) {
    for (int f = 0; f < 7; ++f) x.at(t, f) += 3.0;
  }
  Trace after;
  Predict(*model, s, x, &after);
  for (int t = 0; t <= cut; ++t) {
    EXPECT_EQ(after.at("y_attn")[t].vec(), before.at("y_attn")[t].vec());
    EXPECT_EQ(after.at("y")[t].vec(), before.at("y")[t].vec());
  }
  EXPECT_NE(after.at("y_attn")[15].vec(), before.at("y_attn")[15].vec());
}

TEST(GradientTest, EveryParameterReached) {
  std::mt19937_64 rng(12);
  for (ModelKind k : {ModelKind::kLstm, ModelKind::kQlstm, ModelKind::kQasa,
                      ModelKind::kQrwkv}) {
    const ModelConfig c = ModelConfig::Paper(k);
    const auto model = MakeForecaster(c);
    const ParamStore s = model->InitParams();
    const SampleGradient g = LossAndGradient(*model, s, RandomWindow(c, rng), 0.7);
    ASSERT_EQ(g.grad.size(), s.total_dim());
    for (std::size_t i = 0; i < s.num_segments(); ++i) {
      bool nonzero = false;
      for (std::size_t j = 0; j < s.value(i).size(); ++j) {
        nonzero = nonzero || g.grad[s.offset(i) + j] != 0.0;
      }
      EXPECT_TRUE(nonzero) << ToString(k) << " " << s.name(i);
    }
    EXPECT_NEAR(g.loss, (g.prediction - 0.7) * (g.prediction - 0.7), 1e-15);
  }
}

TEST(GradientTest, TinyModelsMatchFiniteDifferences) {
  std::mt19937_64 rng(13);
  for (ModelKind k : {ModelKind::kLstm, ModelKind::kQlstm, ModelKind::kQasa,
                      ModelKind::kQrwkv}) {
    const ModelConfig c = ModelConfig::Tiny(k);
    const auto model = MakeForecaster(c);
    ParamStore s = model->InitParams();
    const ad::Tensor x = RandomWindow(c, rng);
    const double target = 0.3;
    const Vec grad = LossAndGradient(*model, s, x, target).grad;
    Vec flat = s.Flatten();
    std::vector<double> rel;
    const double h = 1e-5;
    for (std::size_t j = 0; j < flat.size(); ++j) {
      const double saved = flat[j];
      auto loss = [&](double v) {
        flat[j] = v;
        s.Unflatten(flat);
        const double d = Predict(*model, s, x) - target;
        return d * d;
      };
      const double fd = (loss(saved + h) - loss(saved - h)) / (2 * h);
      flat[j] = saved;
      rel.push_back(std::abs(fd - grad[j]) /
                    std::max({std::abs(fd), std::abs(grad[j]), 1e-6}));
    }
    s.Unflatten(flat);
    std::sort(rel.begin(), rel.end());
    const double p99 = rel[static_cast<std::size_t>(std::ceil(0.99 * rel.size())) - 1];
    EXPECT_LT(p99, 1e-3) << ToString(k);
  }
}

}  // namespace
}  // namespace qfc::models
