// Copyright 2026 The stabscope Authors
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

#include "stabscope/cnn/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "json.hpp"
#include "stabscope/csv.hpp"
#include "stabscope/errors.hpp"

namespace stabscope::cnn {

namespace {

using Json = nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

Json config_json(const ModelConfig& c) {
  Json j;
  j["variant"] = variant_name(c.variant);
  j["conv_filters"] = c.conv_filters;
  j["kernel"] = c.kernel;
  j["pool"] = c.pool;
  j["pool_mode"] = pool_mode_name(c.pool_mode);
  j["pooled_blocks"] = c.pooled_blocks;
  j["dense_hidden"] = c.dense_hidden;
  j["dropout_rate"] = c.dropout_rate;
  j["l2_coeff"] = c.l2_coeff;
  j["input_channels"] = c.input_channels;
  j["input_extent"] = c.input_extent;
  return j;
}

ModelConfig config_from_json(const Json& j) {
  ModelConfig c;
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.conv_filters = j.at("conv_filters").get<std::vector<std::size_t>>();
  c.kernel = j.at("kernel").get<Extent3>();
  c.pool = j.at("pool").get<Extent3>();
  c.pool_mode = parse_pool_mode(j.at("pool_mode").get<std::string>());
  c.pooled_blocks = j.at("pooled_blocks").get<std::size_t>();
  c.dense_hidden = j.at("dense_hidden").get<std::size_t>();
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.l2_coeff = j.at("l2_coeff").get<double>();
  c.input_channels = j.at("input_channels").get<std::size_t>();
  c.input_extent = j.at("input_extent").get<Extent3>();
  return c;
}

}  // namespace

std::string checkpoint_bytes(Model& model) {
  Json h;
  h["format_version"] = kCheckpointFormatVersion;
  h["config"] = config_json(model.config());
  h["seed"] = model.init_seed();
  h["pooling"] = model.config().variant == Variant::kMethod2 ? "global_average" : "flatten";
  Json names = Json::array(), shapes = Json::array();
  std::size_t total = 0;
  for (auto* p : model.params()) {
    names.push_back(p->name);
    shapes.push_back(p->value.shape());
    total += p->value.size();
  }
  h["param_names"] = names;
  h["shapes"] = shapes;
  h["n_values"] = total;
  std::string out = h.dump() + "\n";
  const std::size_t header = out.size();
  out.resize(header + total * sizeof(double));
  char* dst = out.data() + header;
  for (auto* p : model.params()) {
    std::memcpy(dst, p->value.data(), p->value.size() * sizeof(double));
    dst += p->value.size() * sizeof(double);
  }
  return out;
}

void save_checkpoint(const std::string& path, Model& model) { write_file(path, checkpoint_bytes(model)); }

Model checkpoint_from_bytes(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw DataError("checkpoint: missing header line");
  Json h;
  try {
    h = Json::parse(bytes.substr(0, nl));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: bad header: ") + e.what());
  }
  try {
    if (h.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw DataError("checkpoint: unsupported format_version");
    }
    Model model(config_from_json(h.at("config")), h.at("seed").get<std::uint64_t>());
    const auto shapes = h.at("shapes").get<std::vector<Shape>>();
    auto params = model.params();
    if (shapes.size() != params.size()) throw DataError("checkpoint: parameter count mismatch");
    std::size_t total = 0;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (shapes[i] != params[i]->value.shape()) {
        throw DataError("checkpoint: shape mismatch for " + params[i]->name);
      }
      total += params[i]->value.size();
    }
    if (bytes.size() - nl - 1 != total * sizeof(double)) throw DataError("checkpoint: payload length mismatch");
    const char* src = bytes.data() + nl + 1;
    for (auto* p : params) {
      std::memcpy(p->value.data(), src, p->value.size() * sizeof(double));
      src += p->value.size() * sizeof(double);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("checkpoint: bad header: ") + e.what());
  } catch (const DimensionError& e) {
    throw DataError(std::string("checkpoint: bad config: ") + e.what());
  }
}

Model load_checkpoint(const std::string& path) { return checkpoint_from_bytes(read_file(path)); }

}  // namespace stabscope::cnn
