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
#include "qfc/models/param_store.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qfc/errors.h"

namespace qfc::models {

int ParamStore::Add(std::string name, ad::Tensor value) {
  if (IndexOf(name) >= 0) {
    throw ConfigError("duplicate parameter name '" + name + "'");
  }
  const std::size_t n = value.size();
  segments_.push_back(Segment{std::move(name), std::move(value), total_dim_});
  total_dim_ += n;
  return static_cast<int>(segments_.size()) - 1;
}

int ParamStore::IndexOf(const std::string& name) const {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> ParamStore::Flatten() const {
  std::vector<double> flat;
  flat.reserve(total_dim_);
  for (const Segment& s : segments_) {
    flat.insert(flat.end(), s.value.vec().begin(), s.value.vec().end());
  }
  return flat;
}

void ParamStore::Unflatten(std::span<const double> flat) {
  if (flat.size() != total_dim_) {
    throw ContractError("unflatten: got " + std::to_string(flat.size()) +
                        " values for " + std::to_string(total_dim_));
  }
  for (Segment& s : segments_) {
    std::copy(flat.begin() + s.offset, flat.begin() + s.offset + s.value.size(),
              s.value.vec().begin());
  }
}

bool ParamStore::AllFinite() const {
  for (const Segment& s : segments_) {
    if (!s.value.AllFinite()) return false;
  }
  return true;
}

void SaveParams(const std::filesystem::path& path, const ParamStore& store,
                const std::string& metadata_json) {
  nlohmann::json manifest;
  manifest["format"] = "qfc-params";
  manifest["version"] = 1;
  manifest["total_dim"] = store.total_dim();
  nlohmann::json segments = nlohmann::json::array();
  for (std::size_t i = 0; i < store.num_segments(); ++i) {
    segments.push_back({{"name", store.name(i)},
                        {"offset", store.offset(i)},
                        {"shape", store.value(i).shape()}});
  }
  manifest["segments"] = std::move(segments);
  manifest["metadata"] = metadata_json.empty()
                             ? nlohmann::json::object()
                             : nlohmann::json::parse(metadata_json);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << manifest.dump() << '\n';
  for (double v : store.Flatten()) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    out.write(bytes, 8);
  }
  if (!out) throw Error("write failed for " + path.string());
}

LoadedParams LoadParams(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw IngestionError(path.string() + ": bad manifest: " + e.what());
  }
  if (manifest.value("format", std::string()) != "qfc-params") {
    throw IngestionError(path.string() + ": not a qfc parameter file");
  }
  LoadedParams loaded;
  const std::size_t total = manifest.at("total_dim").get<std::size_t>();
  for (const auto& seg : manifest.at("segments")) {
    ad::Tensor t(seg.at("shape").get<ad::Shape>());
    const int idx = loaded.store.Add(seg.at("name").get<std::string>(), std::move(t));
    if (loaded.store.offset(idx) != seg.at("offset").get<std::size_t>()) {
      throw IngestionError(path.string() + ": offset mismatch for segment " +
                           loaded.store.name(idx));
    }
  }
  if (loaded.store.total_dim() != total) {
    throw IngestionError(path.string() + ": total_dim mismatch");
  }
  std::vector<double> flat(total);
  for (std::size_t i = 0; i < total; ++i) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
      throw IngestionError(path.string() + ": truncated after " +
                           std::to_string(i) + " values");
    }
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= std::uint64_t{bytes[b]} << (8 * b);
    flat[i] = std::bit_cast<double>(bits);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IngestionError(path.string() + ": trailing bytes after payload");
  }
  loaded.store.Unflatten(flat);
  loaded.metadata_json = manifest.at("metadata").dump();
  return loaded;
}

}  // namespace qfc::models
