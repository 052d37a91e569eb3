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
#include "qfc/autodiff/tape.h"

#include <utility>

#include "qfc/errors.h"

namespace qfc::ad {

const Tensor& Var::value() const {
  if (tape_ == nullptr) throw ContractError("use of an unbound Var");
  return tape_->value(id_);
}

Var Tape::Leaf(Tensor value) {
  return Record("leaf", std::move(value), {}, nullptr);
}

Var Tape::Record(std::string kind, Tensor value, std::vector<int> inputs,
                 BackwardFn backward) {
  if (backward_done_) throw ContractError("tape already differentiated");
  const int id = static_cast<int>(nodes_.size());
  for (int in : inputs) {
    if (in < 0 || in >= id) {
      throw ContractError(kind + ": input node " + std::to_string(in) +
                          " does not precede node " + std::to_string(id));
    }
  }
  nodes_.push_back(Node{std::move(kind), std::move(value), std::move(inputs),
                        std::move(backward), Tensor()});
  return Var(this, id);
}

Tensor& Tape::AccumulateGrad(int id) {
  Node& node = nodes_.at(id);
  if (node.grad.size() == 0 && node.value.size() != 0) {
    node.grad = Tensor(node.value.shape());
  }
  return node.grad;
}

void Tape::Backward(Var loss) {
  if (loss.tape() != this) throw ContractError("loss lives on another tape");
  if (backward_done_) throw ContractError("Backward called twice");
  const Tensor& lv = value(loss.id());
  if (lv.size() != 1) {
    throw ContractError("Backward needs a scalar loss, got shape " +
                        ShapeString(lv.shape()));
  }
  backward_done_ = true;
  AccumulateGrad(loss.id())[0] = 1.0;
  for (int id = loss.id(); id >= 0; --id) {
    Node& node = nodes_[id];
    if (node.grad.size() == 0 || !node.backward) continue;
    node.backward(*this, id);
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    AccumulateGrad(static_cast<int>(id));
  }
}

const Tensor& Tape::grad(Var v) const {
  if (v.tape() != this) throw ContractError("Var lives on another tape");
  return grad(v.id());
}

const Tensor& Tape::grad(int id) const {
  if (!backward_done_) throw ContractError("grad() before Backward()");
  return nodes_.at(id).grad;
}

}  // namespace qfc::ad
