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
#include "qfc/qsim/simulator.h"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "qfc/errors.h"

namespace qfc::qsim {
namespace {

using Matrix2 = std::array<Amplitude, 4>;  // row-major [[a, b], [c, d]]

constexpr Amplitude kI{0.0, 1.0};

void CheckQubitCount(int n) {
  if (n < 1 || n > kMaxQubits) {
    std::ostringstream msg;
    msg << "qubit count " << n << " outside [1, " << kMaxQubits << "]";
    throw ConfigError(msg.str());
  }
}

void CheckWire(int wire, int n, const char* what) {
  if (wire < 0 || wire >= n) {
    std::ostringstream msg;
    msg << what << " wire " << wire << " outside [0, " << n << ")";
    throw ConfigError(msg.str());
  }
}

Matrix2 GateMatrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  switch (kind) {
    case GateKind::kH: {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r, r, -r};
    }
    case GateKind::kRX:
      return {c, -kI * s, -kI * s, c};
    case GateKind::kRY:
      return {c, -s, s, c};
    case GateKind::kRZ:
      return {std::polar(1.0, -angle / 2.0), 0.0, 0.0,
              std::polar(1.0, angle / 2.0)};
    case GateKind::kCNOT:
      break;
  }
  throw UnsupportedGateError("no 2x2 matrix for CNOT");
}

Matrix2 Dagger(const Matrix2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

// Plain product; std::complex operator* adds inf/NaN recovery we never need.
inline Amplitude Mul(const Amplitude& a, const Amplitude& b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void ApplySingle(Statevector& state, int wire, const Matrix2& m) {
  const std::size_t stride = std::size_t{1} << wire;
  auto amps = state.amps();
  if (m[1] == Amplitude{} && m[2] == Amplitude{}) {
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        amps[i] = Mul(m[0], amps[i]);
        amps[i + stride] = Mul(m[3], amps[i + stride]);
      }
    }
    return;
  }
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Amplitude a0 = amps[i];
      const Amplitude a1 = amps[i + stride];
      amps[i] = Mul(m[0], a0) + Mul(m[1], a1);
      amps[i + stride] = Mul(m[2], a0) + Mul(m[3], a1);
    }
  }
}

void ApplyCnot(Statevector& state, int control, int target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  auto amps = state.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
  }
}

void ApplyChecked(Statevector& state, const GateOp& gate, double angle,
                  bool adjoint) {
  CheckWire(gate.target, state.n_qubits(), "target");
  if (gate.kind == GateKind::kCNOT) {
    if (!gate.control) throw ConfigError("CNOT without control wire");
    CheckWire(*gate.control, state.n_qubits(), "control");
    if (*gate.control == gate.target) {
      throw ConfigError("CNOT control equals target");
    }
    ApplyCnot(state, *gate.control, gate.target);
    return;
  }
  if (IsRotation(gate.kind) && !std::isfinite(angle)) {
    throw NumericError("non-finite angle for " + GateName(gate.kind));
  }
  const Matrix2 m = GateMatrix(gate.kind, angle);
  ApplySingle(state, gate.target, adjoint ? Dagger(m) : m);
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  CheckQubitCount(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector::Statevector(int n_qubits, std::vector<Amplitude> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
  CheckQubitCount(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw ContractError("amplitude vector length " +
                        std::to_string(amps_.size()) + " != 2^" +
                        std::to_string(n_qubits));
  }
}

double Statevector::Norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

Statevector ZeroState(int n_qubits) { return Statevector(n_qubits); }

bool IsRotation(GateKind kind) {
  return kind == GateKind::kRX || kind == GateKind::kRY ||
         kind == GateKind::kRZ;
}

std::string GateName(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
      return "H";
    case GateKind::kRX:
      return "RX";
    case GateKind::kRY:
      return "RY";
    case GateKind::kRZ:
      return "RZ";
    case GateKind::kCNOT:
      return "CNOT";
  }
  return "?";
}

double ApplyTransform(InputTransform t, double x) {
  switch (t) {
    case InputTransform::kIdentity:
      return x;
    case InputTransform::kArctan:
      return std::atan(x);
    case InputTransform::kArctanSquare:
      return std::atan(x * x);
  }
  return x;
}

double TransformDerivative(InputTransform t, double x) {
  switch (t) {
    case InputTransform::kIdentity:
      return 1.0;
    case InputTransform::kArctan:
      return 1.0 / (1.0 + x * x);
    case InputTransform::kArctanSquare:
      return 2.0 * x / (1.0 + x * x * x * x);
  }
  return 1.0;
}

AngleBinding AngleBinding::Constant(double radians) {
  AngleBinding b;
  b.source = Source::kConstant;
  b.value = radians;
  return b;
}

AngleBinding AngleBinding::Trainable(int slot) {
  AngleBinding b;
  b.source = Source::kTrainable;
  b.slot = slot;
  return b;
}

AngleBinding AngleBinding::Input(int slot, InputTransform t) {
  AngleBinding b;
  b.source = Source::kInput;
  b.slot = slot;
  b.transform = t;
  return b;
}

GateOp GateOp::H(int wire) { return GateOp{GateKind::kH, wire, {}, {}}; }

GateOp GateOp::CNOT(int control, int target) {
  return GateOp{GateKind::kCNOT, target, control, {}};
}

GateOp GateOp::RX(int wire, AngleBinding angle) {
  return GateOp{GateKind::kRX, wire, {}, angle};
}

GateOp GateOp::RY(int wire, AngleBinding angle) {
  return GateOp{GateKind::kRY, wire, {}, angle};
}

GateOp GateOp::RZ(int wire, AngleBinding angle) {
  return GateOp{GateKind::kRZ, wire, {}, angle};
}

void CircuitTemplate::Validate() const {
  CheckQubitCount(n_qubits);
  if (n_trainable < 0 || n_inputs < 0) {
    throw ConfigError("negative slot count");
  }
  std::vector<bool> trainable_used(n_trainable, false);
  std::vector<bool> input_used(n_inputs, false);
  if (prep == StatePrep::kAmplitude) {
    if (n_inputs < 1 || n_inputs > (1 << n_qubits)) {
      throw ConfigError("amplitude preparation needs 1 <= n_inputs <= 2^" +
                        std::to_string(n_qubits));
    }
    input_used.assign(n_inputs, true);
  }
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const GateOp& op = gates[g];
    const auto where = [&] {
      return "gate " + std::to_string(g) + " (" + GateName(op.kind) + "): ";
    };
    if (op.target < 0 || op.target >= n_qubits) {
      throw ConfigError(where() + "target wire out of range");
    }
    if (op.kind == GateKind::kCNOT) {
      if (!op.control) throw ConfigError(where() + "missing control");
      if (*op.control < 0 || *op.control >= n_qubits) {
        throw ConfigError(where() + "control wire out of range");
      }
      if (*op.control == op.target) {
        throw ConfigError(where() + "control equals target");
      }
    } else if (op.control) {
      throw ConfigError(where() + "control on a single-qubit gate");
    }
    const bool rotation = IsRotation(op.kind);
    const bool bound = op.angle.source != AngleBinding::Source::kNone;
    if (rotation != bound) {
      throw ConfigError(where() + (rotation ? "rotation without angle binding"
                                          : "angle binding on fixed gate"));
    }
    if (op.angle.source == AngleBinding::Source::kTrainable) {
      if (op.angle.slot < 0 || op.angle.slot >= n_trainable) {
        throw ConfigError(where() + "trainable slot out of range");
      }
      trainable_used[op.angle.slot] = true;
    } else if (op.angle.source == AngleBinding::Source::kInput) {
      if (op.angle.slot < 0 || op.angle.slot >= n_inputs) {
        throw ConfigError(where() + "input slot out of range");
      }
      input_used[op.angle.slot] = true;
    }
  }
  for (int k = 0; k < n_trainable; ++k) {
    if (!trainable_used[k]) {
      throw ConfigError("trainable slot " + std::to_string(k) +
                        " is never referenced");
    }
  }
  for (int j = 0; j < n_inputs; ++j) {
    if (!input_used[j]) {
      throw ConfigError("input slot " + std::to_string(j) +
                        " is never referenced");
    }
  }
  std::vector<bool> seen(n_qubits, false);
  for (int w : measured_wires) {
    if (w < 0 || w >= n_qubits) {
      throw ConfigError("measured wire " + std::to_string(w) +
                        " out of range");
    }
    if (seen[w]) {
      throw ConfigError("measured wire " + std::to_string(w) + " repeated");
    }
    seen[w] = true;
  }
}

void ApplyGate(Statevector& state, const GateOp& gate, double angle) {
  ApplyChecked(state, gate, angle, /*adjoint=*/false);
}

void ApplyGateAdjoint(Statevector& state, const GateOp& gate, double angle) {
  ApplyChecked(state, gate, angle, /*adjoint=*/true);
}

std::vector<GateOp> EncodingGates(const EncodingSpec& spec) {
  std::vector<GateOp> gates;
  switch (spec.kind) {
    case EncodingKind::kAmplitude:
      break;
    case EncodingKind::kQlstmAngle:
      for (int i = 0; i < spec.n_qubits; ++i) {
        gates.push_back(GateOp::H(i));
        gates.push_back(
            GateOp::RY(i, AngleBinding::Input(i, InputTransform::kArctan)));
        gates.push_back(GateOp::RZ(
            i, AngleBinding::Input(i, InputTransform::kArctanSquare)));
      }
      break;
    case EncodingKind::kRxAngle:
      for (int i = 0; i < spec.n_qubits; ++i) {
        gates.push_back(GateOp::RX(i, AngleBinding::Input(i)));
      }
      break;
  }
  return gates;
}

Statevector AmplitudeEncode(std::span<const double> x, int n_qubits) {
  CheckQubitCount(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (x.empty() || x.size() > dim) {
    throw ContractError("amplitude encoding of " + std::to_string(x.size()) +
                        " values onto " + std::to_string(n_qubits) +
                        " qubits");
  }
  double sq = 0.0;
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericError("non-finite amplitude input");
    sq += v * v;
  }
  const double norm = std::sqrt(sq);
  if (norm < kMinAmplitudeNorm) {
    throw DegenerateInputError("amplitude encoding of a vector with norm " +
                               std::to_string(norm));
  }
  std::vector<Amplitude> amps(dim, Amplitude{0.0, 0.0});
  for (std::size_t i = 0; i < x.size(); ++i) amps[i] = x[i] / norm;
  return Statevector(n_qubits, std::move(amps));
}

Statevector Encode(const EncodingSpec& spec, std::span<const double> x) {
  if (spec.kind == EncodingKind::kAmplitude) {
    return AmplitudeEncode(x, spec.n_qubits);
  }
  if (static_cast<int>(x.size()) != spec.n_qubits) {
    throw ContractError("angle encoding expects " +
                        std::to_string(spec.n_qubits) + " values, got " +
                        std::to_string(x.size()));
  }
  Statevector state(spec.n_qubits);
  for (const GateOp& op : EncodingGates(spec)) {
    ApplyGate(state, op, ResolveAngle(op.angle, {}, x));
  }
  return state;
}

CircuitTemplate WithEncoding(const EncodingSpec& spec,
                             const CircuitTemplate& ansatz) {
  if (spec.n_qubits != ansatz.n_qubits) {
    throw ConfigError("encoding and ansatz qubit counts differ");
  }
  if (ansatz.n_inputs != 0 || ansatz.prep != StatePrep::kZero) {
    throw ConfigError("ansatz already consumes inputs");
  }
  CircuitTemplate out = ansatz;
  if (spec.kind == EncodingKind::kAmplitude) {
    out.prep = StatePrep::kAmplitude;
    out.n_inputs = 1 << spec.n_qubits;
    return out;
  }
  out.gates = EncodingGates(spec);
  out.gates.insert(out.gates.end(), ansatz.gates.begin(), ansatz.gates.end());
  out.n_inputs = spec.n_qubits;
  return out;
}

double ResolveAngle(const AngleBinding& binding, std::span<const double> params,
                    std::span<const double> inputs) {
  switch (binding.source) {
    case AngleBinding::Source::kNone:
      return 0.0;
    case AngleBinding::Source::kConstant:
      return binding.value;
    case AngleBinding::Source::kTrainable:
      return ApplyTransform(binding.transform, params[binding.slot]);
    case AngleBinding::Source::kInput:
      return ApplyTransform(binding.transform, inputs[binding.slot]);
  }
  return 0.0;
}

Statevector RunCircuit(const CircuitTemplate& tpl,
                       std::span<const double> params,
                       std::span<const double> inputs) {
  tpl.Validate();
  if (static_cast<int>(params.size()) != tpl.n_trainable) {
    throw ContractError("circuit expects " + std::to_string(tpl.n_trainable) +
                        " params, got " + std::to_string(params.size()));
  }
  if (static_cast<int>(inputs.size()) != tpl.n_inputs) {
    throw ContractError("circuit expects " + std::to_string(tpl.n_inputs) +
                        " inputs, got " + std::to_string(inputs.size()));
  }
  Statevector state = tpl.prep == StatePrep::kAmplitude
                          ? AmplitudeEncode(inputs, tpl.n_qubits)
                          : Statevector(tpl.n_qubits);
  for (const GateOp& op : tpl.gates) {
    ApplyGate(state, op, ResolveAngle(op.angle, params, inputs));
  }
  return state;
}

std::vector<double> ExpectZ(const Statevector& state,
                            std::span<const int> wires) {
  std::vector<double> out(wires.size(), 0.0);
  for (std::size_t k = 0; k < wires.size(); ++k) {
    if (wires[k] < 0 || wires[k] >= state.n_qubits()) {
      throw ConfigError("measured wire " + std::to_string(wires[k]) +
                        " out of range");
    }
  }
  const auto amps = state.amps();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    for (std::size_t k = 0; k < wires.size(); ++k) {
      out[k] += ((i >> wires[k]) & 1) ? -p : p;
    }
  }
  return out;
}

std::vector<double> Measure(const CircuitTemplate& tpl,
                            std::span<const double> params,
                            std::span<const double> inputs) {
  return ExpectZ(RunCircuit(tpl, params, inputs), tpl.measured_wires);
}

}  // namespace qfc::qsim
