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

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qfc/autodiff/ops.h"
#include "qfc/autodiff/quantum_op.h"
#include "qfc/autodiff/tape.h"
#include "qfc/errors.h"
#include "qfc/qsim/templates.h"

namespace qfc::ad {
namespace {

using Builder = std::function<Var(const std::vector<Var>&)>;

Tensor RandomTensor(Shape shape, std::mt19937_64& rng, double lo = -1.5,
                    double hi = 1.5) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(std::move(shape));
  for (double& v : t.vec()) v = u(rng);
  return t;
}

// sum(w ⊙ f(inputs)) for a fixed random w, so every output element matters.
double Evaluate(const Builder& f, const std::vector<Tensor>& inputs,
                const Tensor& w) {
  Tape tape;
  std::vector<Var> vars;
  for (const auto& t : inputs) vars.push_back(tape.Leaf(t));
  const Var y = f(vars);
  double s = 0.0;
  for (std::size_t i = 0; i < y.value().size(); ++i) s += w[i] * y.value()[i];
  return s;
}

// Five-point central difference against the tape gradient of every input
// element.
void CheckGradient(const Builder& f, std::vector<Tensor> inputs, double tol,
                   std::uint64_t seed = 1, double h = 1e-3) {
  std::mt19937_64 rng(seed);
  Tensor w;
  std::vector<Tensor> analytic;
  {
    Tape tape;
    std::vector<Var> vars;
    for (const auto& t : inputs) vars.push_back(tape.Leaf(t));
    const Var y = f(vars);
    w = RandomTensor(y.shape(), rng);
    const Var loss = Sum(Mul(y, tape.Leaf(w)));
    tape.Backward(loss);
    for (const Var& v : vars) analytic.push_back(tape.grad(v));
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    for (std::size_t i = 0; i < inputs[k].size(); ++i) {
      const double saved = inputs[k][i];
      auto at = [&](double delta) {
        inputs[k][i] = saved + delta;
        return Evaluate(f, inputs, w);
      };
      const double fd =
          (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      inputs[k][i] = saved;
      const double a = analytic[k][i];
      const double rel =
          std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-6});
      EXPECT_LT(rel, tol) << "input " << k << " element " << i << ": tape " << a
                          << " vs fd " << fd;
    }
  }
}

TEST(TensorTest, ShapeChecked) {
  EXPECT_THROW(Tensor({2, 2}, {1.0, 2.0, 3.0}), ContractError);
  const Tensor m = Tensor::Matrix(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m.at(1, 2), 6.0);
  EXPECT_EQ(Tensor::Scalar(4.0).rank(), 0);
  EXPECT_EQ(Tensor::Scalar(4.0).item(), 4.0);
}

TEST(ForwardTest, Examples) {
  Tape tape;
  const Var z = tape.Leaf(Tensor::Vector({0.0, 0.0}));
  const Var s = Softmax(z);
  EXPECT_DOUBLE_EQ(s.value()[0], 0.5);
  EXPECT_DOUBLE_EQ(s.value()[1], 0.5);
  const Var zero = tape.Leaf(Tensor::Vector({0.0}));
  EXPECT_DOUBLE_EQ(Sigmoid(zero).value()[0], 0.5);
  EXPECT_DOUBLE_EQ(Tanh(zero).value()[0], 0.0);
  const Var mse = Mse(tape.Leaf(Tensor::Vector({1, 2})),
                      tape.Leaf(Tensor::Vector({1, 3})));
  EXPECT_DOUBLE_EQ(mse.value().item(), 0.5);
  const Var g = Gelu(tape.Leaf(Tensor::Vector({1.0, -1.0})));
  EXPECT_NEAR(g.value()[0], 0.8413447460685429, 1e-15);
  EXPECT_NEAR(g.value()[1], -0.15865525393145707, 1e-15);
}

TEST(ForwardTest, SoftmaxLargeLogitsStable) {
  Tape tape;
  const Var s = Softmax(tape.Leaf(Tensor::Vector({1000.0, 1000.0, -1000.0})));
  EXPECT_NEAR(s.value()[0], 0.5, 1e-15);
  EXPECT_TRUE(s.value().AllFinite());
}

TEST(ForwardTest, AffineValues) {
  Tape tape;
  const Var w = tape.Leaf(Tensor::Matrix(2, 3, {1, 2, 3, 4, 5, 6}));
  const Var x = tape.Leaf(Tensor::Vector({1, 0, -1}));
  const Var b = tape.Leaf(Tensor::Vector({0.5, -0.5}));
  const Var y = Affine(w, x, b);
  EXPECT_EQ(y.value().vec(), (std::vector<double>{-1.5, -2.5}));
  const Var xs = tape.Leaf(Tensor::Matrix(2, 3, {1, 0, -1, 0, 1, 0}));
  const Var ys = Affine(w, xs, b);
  EXPECT_EQ(ys.shape(), (Shape{2, 2}));
  EXPECT_EQ(ys.value().vec(), (std::vector<double>{-1.5, -2.5, 2.5, 4.5}));
}

TEST(ShapeErrorTest, MessagesNameBothShapes) {
  Tape tape;
  const Var a = tape.Leaf(Tensor::Vector({1, 2}));
  const Var b = tape.Leaf(Tensor::Vector({1, 2, 3}));
  try {
    Add(a, b);
    FAIL() << "expected ContractError";
  } catch (const ContractError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("[2]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[3]"), std::string::npos) << msg;
  }
  const Var m = tape.Leaf(Tensor::Matrix(2, 2, {1, 2, 3, 4}));
  EXPECT_THROW(Affine(m, b, a), ContractError);
  EXPECT_THROW(MatMul(m, Stack(std::vector<Var>{b})), ContractError);
  EXPECT_THROW(Mul(a, b), ContractError);
  EXPECT_THROW(Mse(a, b), ContractError);
  EXPECT_THROW(Softmax(m, 2), ContractError);
}

TEST(BackwardTest, Square) {
  Tape tape;
  const Var x = tape.Leaf(Tensor::Scalar(3.0));
  tape.Backward(Mul(x, x));
  EXPECT_DOUBLE_EQ(tape.grad(x).item(), 6.0);
}

TEST(BackwardTest, UnreachedLeafIsZero) {
  Tape tape;
  const Var x = tape.Leaf(Tensor::Scalar(3.0));
  const Var w = tape.Leaf(Tensor::Vector({1.0, 2.0}));
  tape.Backward(Mul(x, x));
  EXPECT_EQ(tape.grad(w).vec(), (std::vector<double>{0.0, 0.0}));
}

TEST(BackwardTest, NonScalarAndSecondCallRejected) {
  Tape tape;
  const Var x = tape.Leaf(Tensor::Vector({1.0, 2.0}));
  EXPECT_THROW(tape.Backward(Tanh(x)), ContractError);
  tape.Backward(Sum(x));
  EXPECT_THROW(tape.Backward(Sum(x)), ContractError);
  Tape other;
  EXPECT_THROW(other.Backward(Sum(x)), ContractError);
}

TEST(BackwardTest, FanOutAccumulates) {
  Tape tape;
  const Var x = tape.Leaf(Tensor::Vector({2.0}));
  const Var y = Add(Mul(x, x), Scale(x, 3.0));  // x² + 3x
  tape.Backward(Sum(y));
  EXPECT_DOUBLE_EQ(tape.grad(x)[0], 7.0);
}

class PrimitiveGradTest : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{42};
  Tensor R(Shape s) { return RandomTensor(std::move(s), rng_); }
};

TEST_F(PrimitiveGradTest, Affine) {
  CheckGradient([](const auto& v) { return Affine(v[0], v[1], v[2]); },
                {R({3, 4}), R({4}), R({3})}, 1e-5);
  CheckGradient([](const auto& v) { return Affine(v[0], v[1], v[2]); },
                {R({3, 4}), R({5, 4}), R({3})}, 1e-5);
  CheckGradient([](const auto& v) { return Linear(v[0], v[1]); },
                {R({2, 3}), R({3})}, 1e-5);
}

TEST_F(PrimitiveGradTest, MatMulTranspose) {
  CheckGradient([](const auto& v) { return MatMul(v[0], v[1]); },
                {R({2, 3}), R({3, 4})}, 1e-5);
  CheckGradient([](const auto& v) { return Transpose(v[0]); }, {R({2, 3})},
                1e-5);
}

TEST_F(PrimitiveGradTest, Elementwise) {
  CheckGradient([](const auto& v) { return Add(v[0], v[1]); },
                {R({2, 3}), R({2, 3})}, 1e-5);
  CheckGradient([](const auto& v) { return Sub(v[0], v[1]); },
                {R({4}), R({4})}, 1e-5);
  CheckGradient([](const auto& v) { return Mul(v[0], v[1]); },
                {R({4}), R({4})}, 1e-5);
  CheckGradient([](const auto& v) { return Scale(v[0], -2.5); }, {R({3})},
                1e-5);
  CheckGradient([](const auto& v) { return Exp(v[0]); }, {R({5})}, 1e-5);
  CheckGradient([](const auto& v) { return Reciprocal(v[0]); },
                {RandomTensor({4}, rng_, 0.5, 2.0)}, 1e-5);
  CheckGradient([](const auto& v) { return Sigmoid(v[0]); }, {R({6})}, 1e-5);
  CheckGradient([](const auto& v) { return Tanh(v[0]); }, {R({6})}, 1e-5);
  CheckGradient([](const auto& v) { return Gelu(v[0]); }, {R({2, 3})}, 1e-5);
}

TEST_F(PrimitiveGradTest, Structural) {
  CheckGradient(
      [](const auto& v) { return Concat(std::vector<Var>{v[0], v[1]}); },
      {R({2}), R({3})}, 1e-5);
  CheckGradient(
      [](const auto& v) { return Stack(std::vector<Var>{v[0], v[1], v[0]}); },
      {R({3}), R({3})}, 1e-5);
  CheckGradient([](const auto& v) { return Row(v[0], 1); }, {R({3, 2})}, 1e-5);
  CheckGradient([](const auto& v) { return Slice(v[0], 1, 2); }, {R({4})},
                1e-5);
  CheckGradient([](const auto& v) { return Sum(v[0]); }, {R({2, 2})}, 1e-5);
}

TEST_F(PrimitiveGradTest, Reductions) {
  CheckGradient([](const auto& v) { return Softmax(v[0]); }, {R({5})}, 1e-5);
  CheckGradient([](const auto& v) { return Softmax(v[0], 0); }, {R({3, 4})},
                1e-5);
  CheckGradient([](const auto& v) { return Softmax(v[0], 1); }, {R({3, 4})},
                1e-5);
  CheckGradient([](const auto& v) { return LayerNorm(v[0]); }, {R({6})}, 1e-5);
  CheckGradient([](const auto& v) { return LayerNorm(v[0]); }, {R({3, 5})},
                1e-5);
  CheckGradient([](const auto& v) { return MeanPool(v[0], 0); }, {R({4, 3})},
                1e-5);
  CheckGradient([](const auto& v) { return MeanPool(v[0], 1); }, {R({4, 3})},
                1e-5);
  CheckGradient([](const auto& v) { return Mse(v[0], v[1]); },
                {R({5}), R({5})}, 1e-5);
}

TEST(PropertyTest, SoftmaxAndLayerNormMoments) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Tape tape;
    const Var a = tape.Leaf(RandomTensor({4, 7}, rng, -5, 5));
    const Tensor s = Softmax(a, 1).value();
    // Output variance is v / (v + eps); rows with v >= 10 land within 1e-6.
    const Var wide = tape.Leaf(RandomTensor({4, 7}, rng, -40, 40));
    const Tensor n = LayerNorm(wide).value();
    for (int r = 0; r < 4; ++r) {
      double sum = 0.0, mean = 0.0, var = 0.0;
      for (int c = 0; c < 7; ++c) {
        sum += s.at(r, c);
        mean += n.at(r, c) / 7;
      }
      for (int c = 0; c < 7; ++c) var += (n.at(r, c) - mean) * (n.at(r, c) - mean) / 7;
      EXPECT_NEAR(sum, 1.0, 1e-12);
      EXPECT_LE(std::abs(mean), 1e-10);
      EXPECT_NEAR(var, 1.0, 1e-6);
    }
  }
}

TEST(PropertyTest, LayerNormVarianceFormula) {
  Tape tape;
  const Tensor x = Tensor::Vector({0.0, 0.01, 0.02});
  const double mean = 0.01, v = 2e-4 / 3;
  const Tensor n = LayerNorm(tape.Leaf(x)).value();
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(n[i], (x[i] - mean) / std::sqrt(v + kLayerNormEps), 1e-12);
  }
}

TEST(PropertyTest, BackwardIsLinear) {
  std::mt19937_64 rng(9);
  const Tensor x0 = RandomTensor({5}, rng);
  const auto grad_of = [&](double a, double b) {
    Tape tape;
    const Var x = tape.Leaf(x0);
    const Var l1 = Sum(Tanh(x));
    const Var l2 = Sum(Mul(Gelu(x), x));
    tape.Backward(Add(Scale(l1, a), Scale(l2, b)));
    return tape.grad(x);
  };
  const Tensor g1 = grad_of(1, 0), g2 = grad_of(0, 1), g = grad_of(2.5, -0.75);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(g[i], 2.5 * g1[i] - 0.75 * g2[i], 1e-10);
  }
}

TEST(PropertyTest, Deterministic) {
  const auto run = [] {
    std::mt19937_64 rng(10);
    Tape tape;
    const Var w = tape.Leaf(RandomTensor({3, 4}, rng));
    const Var x = tape.Leaf(RandomTensor({4}, rng));
    tape.Backward(Sum(Softmax(Gelu(Linear(w, x)))));
    return std::make_pair(tape.grad(w).vec(), tape.size());
  };
  EXPECT_EQ(run(), run());
}

TEST(QuantumApplyTest, ZeroInputsNoTrainables) {
  Tape tape;
  qsim::CircuitTemplate empty;
  empty.n_qubits = 3;
  empty.measured_wires = {0, 1, 2};
  const Var p = tape.Leaf(Tensor::Vector({}));
  const Var x = tape.Leaf(Tensor::Vector({0.0, 0.0, 0.0}));
  const Var z = QuantumApply(empty, p, x, {qsim::EncodingKind::kRxAngle, 3});
  EXPECT_EQ(z.value().vec(), (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(QuantumApplyTest, SingleRyGradient) {
  qsim::CircuitTemplate tpl;
  tpl.n_qubits = 1;
  tpl.gates = {qsim::GateOp::RY(0, qsim::AngleBinding::Trainable(0))};
  tpl.measured_wires = {0};
  tpl.n_trainable = 1;
  Tape tape;
  const Var p = tape.Leaf(Tensor::Vector({std::numbers::pi / 2}));
  const Var x = tape.Leaf(Tensor::Vector({}));
  tape.Backward(Sum(QuantumApply(tpl, p, x)));
  EXPECT_NEAR(tape.grad(p)[0], -1.0, 1e-12);
}

TEST(QuantumApplyTest, QrwkvCircuitFiniteDifferences) {
  std::mt19937_64 rng(12);
  const qsim::CircuitTemplate ansatz = qsim::RyRzRingAnsatz(4, 2);
  CheckGradient(
      [&](const auto& v) {
        return QuantumApply(ansatz, v[0], Tanh(v[1]),
                            {qsim::EncodingKind::kRxAngle, 4});
      },
      {RandomTensor({16}, rng, -3, 3), RandomTensor({4}, rng)}, 1e-4);
}

TEST(QuantumApplyTest, AmplitudeCircuitFiniteDifferences) {
  std::mt19937_64 rng(13);
  const qsim::CircuitTemplate ansatz = qsim::RingRyAnsatz(3, 2);
  CheckGradient(
      [&](const auto& v) {
        return QuantumApply(ansatz, v[0], v[1],
                            {qsim::EncodingKind::kAmplitude, 3});
      },
      {RandomTensor({6}, rng, -3, 3), RandomTensor({5}, rng)}, 1e-4);
}

TEST(QuantumApplyTest, ArityChecked) {
  const qsim::CircuitTemplate ansatz = qsim::RyRzRingAnsatz(2, 1);
  Tape tape;
  const Var p = tape.Leaf(Tensor::Vector({0.1, 0.2}));
  const Var x = tape.Leaf(Tensor::Vector({0.1, 0.2}));
  EXPECT_THROW(QuantumApply(ansatz, p, x, {qsim::EncodingKind::kRxAngle, 2}),
               Error);
}

}  // namespace
}  // namespace qfc::ad
