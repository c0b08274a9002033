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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stabscope {

/// Row-major matrix of small unsigned codes: bits for computational-basis
/// snapshots, letters 0..3 (I, X, Y, Z) for Pauli snapshots.
struct ByteMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;

  ByteMatrix() = default;
  ByteMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::span<std::uint8_t> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const std::uint8_t> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  std::uint8_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const ByteMatrix&, const ByteMatrix&) = default;
};

}  // namespace stabscope
