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
#ifndef QFC_MODELS_PARAM_STORE_H_
#define QFC_MODELS_PARAM_STORE_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qfc/autodiff/tensor.h"

namespace qfc::models {

// Named parameter tensors. The flat layout is the registration order.
class ParamStore {
 public:
  // Returns the segment index. Throws ConfigError on a duplicate name.
  int Add(std::string name, ad::Tensor value);

  std::size_t num_segments() const { return segments_.size(); }
  std::size_t total_dim() const { return total_dim_; }

  const std::string& name(std::size_t i) const { return segments_[i].name; }
  const ad::Tensor& value(std::size_t i) const { return segments_[i].value; }
  ad::Tensor& value(std::size_t i) { return segments_[i].value; }
  std::size_t offset(std::size_t i) const { return segments_[i].offset; }
  // -1 if absent.
  int IndexOf(const std::string& name) const;

  std::vector<double> Flatten() const;
  // Throws ContractError unless flat.size() == total_dim().
  void Unflatten(std::span<const double> flat);

  bool AllFinite() const;

 private:
  struct Segment {
    std::string name;
    ad::Tensor value;
    std::size_t offset;
  };
  std::vector<Segment> segments_;
  std::size_t total_dim_ = 0;
};

// Checkpoint layout: one line of JSON manifest
//   {"format":"qfc-params","version":1,"total_dim":N,
//    "segments":[{"name":..,"offset":..,"shape":[..]},..],"metadata":{..}}
// terminated by '\n', followed by N little-endian IEEE-754 doubles.
// `metadata_json` must be a JSON object (or empty for {}).
void SaveParams(const std::filesystem::path& path, const ParamStore& store,
                const std::string& metadata_json = "");

struct LoadedParams {
  ParamStore store;
  std::string metadata_json;
};

// Throws IngestionError on a malformed file.
LoadedParams LoadParams(const std::filesystem::path& path);

}  // namespace qfc::models

#endif  // QFC_MODELS_PARAM_STORE_H_
