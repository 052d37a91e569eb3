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
#ifndef QFC_QSIM_CIRCUIT_H_
#define QFC_QSIM_CIRCUIT_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qfc::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 16;

// Pure n-qubit state. Wire i is bit i of the basis index (little-endian), so
// amplitude k belongs to the basis state whose wire-i value is (k >> i) & 1.
class Statevector {
 public:
  // |0...0> on n qubits. Throws ConfigError unless 1 <= n <= kMaxQubits.
  explicit Statevector(int n_qubits);
  Statevector(int n_qubits, std::vector<Amplitude> amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<Amplitude> amps() { return amps_; }
  std::span<const Amplitude> amps() const { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }

  double Norm() const;

 private:
  int n_qubits_;
  std::vector<Amplitude> amps_;
};

Statevector ZeroState(int n_qubits);

enum class GateKind { kH, kRX, kRY, kRZ, kCNOT };

bool IsRotation(GateKind kind);
std::string GateName(GateKind kind);

// Transform applied to an input value before it is used as an angle.
enum class InputTransform { kIdentity, kArctan, kArctanSquare };

double ApplyTransform(InputTransform t, double x);
double TransformDerivative(InputTransform t, double x);

struct AngleBinding {
  enum class Source { kNone, kConstant, kTrainable, kInput };

  Source source = Source::kNone;
  double value = 0.0;  // kConstant only
  int slot = -1;       // kTrainable / kInput
  InputTransform transform = InputTransform::kIdentity;

  static AngleBinding Constant(double radians);
  static AngleBinding Trainable(int slot);
  static AngleBinding Input(int slot,
                            InputTransform t = InputTransform::kIdentity);
};

struct GateOp {
  GateKind kind = GateKind::kH;
  int target = 0;
  std::optional<int> control;
  AngleBinding angle;

  static GateOp H(int wire);
  static GateOp CNOT(int control, int target);
  static GateOp RX(int wire, AngleBinding angle);
  static GateOp RY(int wire, AngleBinding angle);
  static GateOp RZ(int wire, AngleBinding angle);
};

// How the register is prepared before the gate list runs.
//   kZero:      |0...0>
//   kAmplitude: the n_inputs input values, normalized, zero-padded to 2^n.
enum class StatePrep { kZero, kAmplitude };

// Smallest accepted input norm for amplitude preparation.
inline constexpr double kMinAmplitudeNorm = 1e-8;

struct CircuitTemplate {
  int n_qubits = 1;
  StatePrep prep = StatePrep::kZero;
  std::vector<GateOp> gates;
  std::vector<int> measured_wires;
  int n_trainable = 0;
  int n_inputs = 0;

  // Throws ConfigError describing the first broken invariant.
  void Validate() const;
};

enum class EncodingKind { kAmplitude, kQlstmAngle, kRxAngle };

struct EncodingSpec {
  EncodingKind kind = EncodingKind::kAmplitude;
  int n_qubits = 1;
};

}  // namespace qfc::qsim

#endif  // QFC_QSIM_CIRCUIT_H_
