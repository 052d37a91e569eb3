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
#ifndef QFC_AUTODIFF_TAPE_H_
#define QFC_AUTODIFF_TAPE_H_

#include <functional>
#include <string>
#include <vector>

#include "qfc/autodiff/tensor.h"

namespace qfc::ad {

class Tape;

// Handle to a node on a tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape() const { return tape_; }
  int id() const { return id_; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

// Append-only record of a forward computation. Nodes are appended after
// their inputs, so a reverse scan is a valid topological order. Single use:
// Backward may be called once.
class Tape {
 public:
  // Propagates node `self`'s gradient into its inputs via AccumulateGrad.
  using BackwardFn = std::function<void(Tape&, int self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var Leaf(Tensor value);
  Var Record(std::string kind, Tensor value, std::vector<int> inputs,
             BackwardFn backward);

  const Tensor& value(int id) const { return nodes_.at(id).value; }
  const std::string& kind(int id) const { return nodes_.at(id).kind; }
  const std::vector<int>& inputs(int id) const { return nodes_.at(id).inputs; }
  std::size_t size() const { return nodes_.size(); }

  // Reverse sweep from a scalar loss. Throws ContractError for a non-scalar
  // loss, a foreign Var, or a second call.
  void Backward(Var loss);

  // Gradient of the loss with respect to v; zeros if v did not reach it.
  const Tensor& grad(Var v) const;
  const Tensor& grad(int id) const;

  // Used by backward functions.
  const Tensor& upstream(int id) const { return nodes_[id].grad; }
  Tensor& AccumulateGrad(int id);

 private:
  struct Node {
    std::string kind;
    Tensor value;
    std::vector<int> inputs;
    BackwardFn backward;
    Tensor grad;
  };

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

}  // namespace qfc::ad

#endif  // QFC_AUTODIFF_TAPE_H_
