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
#ifndef QFC_AUTODIFF_TENSOR_H_
#define QFC_AUTODIFF_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qfc::ad {

using Shape = std::vector<int>;

std::string ShapeString(const Shape& shape);
std::size_t ShapeSize(const Shape& shape);

// Dense row-major array of doubles. A rank-0 tensor holds one scalar.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);  // zero-filled
  Tensor(Shape shape, std::vector<double> data);

  static Tensor Scalar(double v) { return Tensor({}, {v}); }
  static Tensor Vector(std::vector<double> v);
  static Tensor Matrix(int rows, int cols, std::vector<double> v);

  const Shape& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::vector<double>& vec() { return data_; }
  const std::vector<double>& vec() const { return data_; }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(int r, int c) { return data_[std::size_t(r) * shape_[1] + c]; }
  double at(int r, int c) const {
    return data_[std::size_t(r) * shape_[1] + c];
  }

  // Value of a one-element tensor.
  double item() const;
  bool AllFinite() const;

 private:
  Shape shape_;
  std::vector<double> data_;
};

}  // namespace qfc::ad

#endif  // QFC_AUTODIFF_TENSOR_H_
