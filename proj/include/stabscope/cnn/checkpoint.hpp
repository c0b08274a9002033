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

#pragma once

#include <string>

#include "stabscope/cnn/model.hpp"

namespace stabscope::cnn {

constexpr int kCheckpointFormatVersion = 1;

/// One JSON header line (format version, config, parameter names and shapes,
/// init seed, global pooling kind), then every parameter as little-endian
/// float64 in layer order.
std::string checkpoint_bytes(Model& model);
void save_checkpoint(const std::string& path, Model& model);

Model checkpoint_from_bytes(const std::string& bytes);
Model load_checkpoint(const std::string& path);

}  // namespace stabscope::cnn
