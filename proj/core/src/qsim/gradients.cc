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
#include "qfc/qsim/gradients.h"

#include <cmath>
#include <numbers>
#include <string>

#include "qfc/errors.h"
#include "qfc/qsim/simulator.h"

namespace qfc::qsim {
namespace {

void CheckArity(const CircuitTemplate& tpl, std::span<const double> params,
                std::span<const double> inputs,
                std::span<const double> upstream) {
  if (static_cast<int>(params.size()) != tpl.n_trainable ||
      static_cast<int>(inputs.size()) != tpl.n_inputs) {
    throw ContractError("circuit expects " + std::to_string(tpl.n_trainable) +
                        " params and " + std::to_string(tpl.n_inputs) +
                        " inputs, got " + std::to_string(params.size()) +
                        " and " + std::to_string(inputs.size()));
  }
  if (upstream.size() != tpl.measured_wires.size()) {
    throw ContractError("upstream has " + std::to_string(upstream.size()) +
                        " entries for " +
                        std::to_string(tpl.measured_wires.size()) +
                        " measured wires");
  }
}

// Weighted observable sum_k u_k Z_{w_k} evaluated on a state.
double WeightedZ(const Statevector& state, std::span<const int> wires,
                 std::span<const double> upstream) {
  const std::vector<double> z = ExpectZ(state, wires);
  double f = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) f += upstream[k] * z[k];
  return f;
}

// <lhs|P|rhs> for the Pauli generator P of a rotation on `wire`.
Amplitude GeneratorOverlap(GateKind kind, int wire, const Statevector& lhs,
                           const Statevector& rhs) {
  const std::size_t mask = std::size_t{1} << wire;
  const auto l = lhs.amps();
  const auto r = rhs.amps();
  double re = 0.0;
  double im = 0.0;
  // conj(a) * b accumulated without std::complex multiplication.
  const auto add = [&](const Amplitude& a, double br, double bi) {
    re += a.real() * br + a.imag() * bi;
    im += a.real() * bi - a.imag() * br;
  };
  for (std::size_t i = 0; i < l.size(); ++i) {
    const bool bit = (i & mask) != 0;
    switch (kind) {
      case GateKind::kRX: {
        const Amplitude& b = r[i ^ mask];
        add(l[i], b.real(), b.imag());
        break;
      }
      case GateKind::kRY: {
        // Y|0> = i|1>, Y|1> = -i|0>
        const Amplitude& b = r[i ^ mask];
        if (bit) {
          add(l[i], -b.imag(), b.real());
        } else {
          add(l[i], b.imag(), -b.real());
        }
        break;
      }
      case GateKind::kRZ: {
        const Amplitude& b = r[i];
        add(l[i], bit ? -b.real() : b.real(), bit ? -b.imag() : b.imag());
        break;
      }
      default:
        return {};
    }
  }
  return {re, im};
}

}  // namespace

CircuitGradient AdjointVjp(const CircuitTemplate& tpl,
                           std::span<const double> params,
                           std::span<const double> inputs,
                           std::span<const double> upstream) {
  CheckArity(tpl, params, inputs, upstream);
  CircuitGradient grad;
  grad.d_params.assign(tpl.n_trainable, 0.0);
  grad.d_inputs.assign(tpl.n_inputs, 0.0);

  std::vector<double> angles(tpl.gates.size());
  for (std::size_t g = 0; g < tpl.gates.size(); ++g) {
    angles[g] = ResolveAngle(tpl.gates[g].angle, params, inputs);
  }
  Statevector state = RunCircuit(tpl, params, inputs);

  // lambda = O |psi>, O diagonal in the computational basis.
  Statevector lambda = state;
  {
    auto amps = lambda.amps();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < upstream.size(); ++k) {
        d += ((i >> tpl.measured_wires[k]) & 1) ? -upstream[k] : upstream[k];
      }
      amps[i] *= d;
    }
  }

  // For U(θ) = exp(-iθP/2): d<O>/dθ = 2 Re <lambda|(-i/2) P|psi_after>
  // = Im <lambda|P|psi_after>, with lambda = (later gates)† O psi_final.
  for (std::size_t g = tpl.gates.size(); g-- > 0;) {
    const GateOp& op = tpl.gates[g];
    if (IsRotation(op.kind) &&
        (op.angle.source == AngleBinding::Source::kTrainable ||
         op.angle.source == AngleBinding::Source::kInput)) {
      const double d_angle =
          std::imag(GeneratorOverlap(op.kind, op.target, lambda, state));
      if (op.angle.source == AngleBinding::Source::kTrainable) {
        grad.d_params[op.angle.slot] +=
            d_angle *
            TransformDerivative(op.angle.transform, params[op.angle.slot]);
      } else {
        grad.d_inputs[op.angle.slot] +=
            d_angle *
            TransformDerivative(op.angle.transform, inputs[op.angle.slot]);
      }
    }
    ApplyGateAdjoint(state, op, angles[g]);
    ApplyGateAdjoint(lambda, op, angles[g]);
  }

  if (tpl.prep == StatePrep::kAmplitude) {
    // f = <x̂|M|x̂> with real x̂ and lambda = M x̂, so df/dx̂_i = 2 Re(lambda_i).
    double sq = 0.0;
    for (double v : inputs) sq += v * v;
    const double norm = std::sqrt(sq);
    std::vector<double> g_hat(inputs.size());
    double dot = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      g_hat[i] = 2.0 * std::real(lambda[i]);
      dot += g_hat[i] * inputs[i] / norm;
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      grad.d_inputs[i] += (g_hat[i] - dot * inputs[i] / norm) / norm;
    }
  }
  return grad;
}

std::vector<double> ParamShiftVjp(const CircuitTemplate& tpl,
                                  std::span<const double> params,
                                  std::span<const double> inputs,
                                  std::span<const double> upstream) {
  for (std::size_t g = 0; g < tpl.gates.size(); ++g) {
    const GateOp& op = tpl.gates[g];
    if (op.angle.source != AngleBinding::Source::kTrainable) continue;
    if (!IsRotation(op.kind)) {
      throw UnsupportedGateError("gate " + std::to_string(g) + " (" +
                                 GateName(op.kind) +
                                 ") carries a trainable angle");
    }
    if (op.angle.transform != InputTransform::kIdentity) {
      throw UnsupportedGateError("gate " + std::to_string(g) +
                                 ": shift rule needs an identity-bound angle");
    }
  }
  tpl.Validate();
  CheckArity(tpl, params, inputs, upstream);

  std::vector<double> angles(tpl.gates.size());
  for (std::size_t g = 0; g < tpl.gates.size(); ++g) {
    angles[g] = ResolveAngle(tpl.gates[g].angle, params, inputs);
  }
  auto evaluate = [&](const std::vector<double>& a) {
    Statevector state = tpl.prep == StatePrep::kAmplitude
                            ? AmplitudeEncode(inputs, tpl.n_qubits)
                            : Statevector(tpl.n_qubits);
    for (std::size_t g = 0; g < tpl.gates.size(); ++g) {
      ApplyGate(state, tpl.gates[g], a[g]);
    }
    return WeightedZ(state, tpl.measured_wires, upstream);
  };

  constexpr double kShift = std::numbers::pi / 2.0;
  std::vector<double> grad(tpl.n_trainable, 0.0);
  std::vector<double> shifted = angles;
  for (std::size_t g = 0; g < tpl.gates.size(); ++g) {
    const GateOp& op = tpl.gates[g];
    if (op.angle.source != AngleBinding::Source::kTrainable) continue;
    shifted[g] = angles[g] + kShift;
    const double plus = evaluate(shifted);
    shifted[g] = angles[g] - kShift;
    const double minus = evaluate(shifted);
    shifted[g] = angles[g];
    grad[op.angle.slot] += (plus - minus) / 2.0;
  }
  return grad;
}

std::vector<double> ParamShiftGrad(const CircuitTemplate& tpl,
                                   std::span<const double> params,
                                   std::span<const double> inputs, int wire) {
  std::vector<double> upstream(tpl.measured_wires.size(), 0.0);
  bool found = false;
  for (std::size_t k = 0; k < tpl.measured_wires.size(); ++k) {
    if (tpl.measured_wires[k] == wire) {
      upstream[k] = 1.0;
      found = true;
    }
  }
  if (!found) {
    // Wire valid but unmeasured: evaluate on a copy that measures it.
    CircuitTemplate copy = tpl;
    copy.measured_wires = {wire};
    copy.Validate();
    const double one = 1.0;
    return ParamShiftVjp(copy, params, inputs, std::span(&one, 1));
  }
  return ParamShiftVjp(tpl, params, inputs, upstream);
}

}  // namespace qfc::qsim
