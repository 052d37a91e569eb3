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
#include "qfc/qsim/circuit_io.h"

#include <algorithm>

#include "json.hpp"
#include "qfc/errors.h"
#include "qfc/qsim/simulator.h"

namespace qfc::qsim {
namespace {

using nlohmann::json;

GateKind ParseGateKind(const std::string& name) {
  if (name == "H") return GateKind::kH;
  if (name == "RX") return GateKind::kRX;
  if (name == "RY") return GateKind::kRY;
  if (name == "RZ") return GateKind::kRZ;
  if (name == "CNOT" || name == "CX") return GateKind::kCNOT;
  throw ConfigError("unknown gate '" + name + "'");
}

InputTransform ParseTransform(const std::string& name) {
  if (name == "identity") return InputTransform::kIdentity;
  if (name == "arctan") return InputTransform::kArctan;
  if (name == "arctan-square") return InputTransform::kArctanSquare;
  throw ConfigError("unknown transform '" + name + "'");
}

GateOp ParseGate(const json& j, int& max_param, int& max_input) {
  GateOp op;
  op.kind = ParseGateKind(j.at("gate").get<std::string>());
  op.target = j.at("target").get<int>();
  if (op.kind == GateKind::kCNOT) {
    op.control = j.at("control").get<int>();
    return op;
  }
  if (!IsRotation(op.kind)) return op;
  if (j.contains("param")) {
    op.angle = AngleBinding::Trainable(j["param"].get<int>());
    max_param = std::max(max_param, op.angle.slot);
  } else if (j.contains("input")) {
    op.angle = AngleBinding::Input(
        j["input"].get<int>(),
        ParseTransform(j.value("transform", std::string("identity"))));
    max_input = std::max(max_input, op.angle.slot);
  } else if (j.contains("angle")) {
    op.angle = AngleBinding::Constant(j["angle"].get<double>());
  } else {
    throw ConfigError(GateName(op.kind) +
                      " needs one of 'param', 'input' or 'angle'");
  }
  return op;
}

}  // namespace

CircuitProgram ParseCircuitProgram(const std::string& json_text) {
  CircuitProgram program;
  CircuitTemplate& tpl = program.tpl;
  try {
    const json doc = json::parse(json_text);
    tpl.n_qubits = doc.at("n_qubits").get<int>();
    const std::string prep = doc.value("prep", std::string("zero"));
    if (prep == "amplitude") {
      tpl.prep = StatePrep::kAmplitude;
    } else if (prep != "zero") {
      throw ConfigError("unknown prep '" + prep + "'");
    }
    program.params = doc.value("params", std::vector<double>{});
    program.inputs = doc.value("inputs", std::vector<double>{});

    int max_param = -1;
    int max_input = -1;
    if (doc.contains("encoding")) {
      const std::string enc = doc["encoding"].get<std::string>();
      EncodingSpec spec{EncodingKind::kRxAngle, tpl.n_qubits};
      if (enc == "qlstm-angle") {
        spec.kind = EncodingKind::kQlstmAngle;
      } else if (enc != "rx-angle") {
        throw ConfigError("unknown encoding '" + enc + "'");
      }
      tpl.gates = EncodingGates(spec);
      max_input = tpl.n_qubits - 1;
    }
    for (const json& g : doc.value("gates", json::array())) {
      tpl.gates.push_back(ParseGate(g, max_param, max_input));
    }
    if (doc.contains("measure")) {
      tpl.measured_wires = doc["measure"].get<std::vector<int>>();
    } else {
      for (int i = 0; i < tpl.n_qubits; ++i) tpl.measured_wires.push_back(i);
    }
    tpl.n_trainable = max_param + 1;
    tpl.n_inputs = tpl.prep == StatePrep::kAmplitude
                       ? static_cast<int>(program.inputs.size())
                       : max_input + 1;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("circuit description: ") + e.what());
  }
  tpl.Validate();
  return program;
}

}  // namespace qfc::qsim
