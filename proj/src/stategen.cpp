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

#include "stabscope/stategen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stabscope/magic.hpp"

namespace stabscope {

SingleQubitState random_haar_1q(Rng& rng) {
  const double cos_theta = 2.0 * uniform01(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform01(rng);
  const double c = std::sqrt((1.0 + cos_theta) / 2.0);
  const double s = std::sqrt((1.0 - cos_theta) / 2.0);
  return {cplx(c, 0.0), std::polar(s, phi)};
}

SingleQubitState stabilizer_1q(int which) {
  const double r = 1.0 / std::numbers::sqrt2;
  switch (which) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {r, r};
    case 3: return {r, -r};
    case 4: return {r, cplx(0.0, r)};
    case 5: return {r, cplx(0.0, -r)};
    default: throw std::out_of_range("stabilizer_1q: index must be in [0, 6)");
  }
}

SingleQubitState random_stab_1q(Rng& rng) { return stabilizer_1q(static_cast<int>(uniform_below(rng, 6))); }

SingleQubitState phase_state(double phi) {
  const double r = 1.0 / std::numbers::sqrt2;
  return {r, std::polar(r, phi)};
}

LabeledState random_product(std::size_t n, StateLabel label, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_product: n must be >= 1");
  std::vector<SingleQubitState> qs;
  qs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    qs.push_back(label == StateLabel::kStabilizer ? random_stab_1q(rng) : random_haar_1q(rng));
  }
  LabeledState out{ProductState(std::move(qs)), label, 0.0};
  out.m2_density = label == StateLabel::kStabilizer ? 0.0 : m2_product(out.state) / static_cast<double>(n);
  return out;
}

Circuit random_brickwork_circuit(std::size_t n, std::size_t depth, Rng& rng, std::size_t first_layer) {
  if (depth > 0 && n < 2) throw std::invalid_argument("random_brickwork_circuit: need n >= 2 for depth > 0");
  Circuit c;
  c.n = n;
  for (std::size_t k = 0; k < depth; ++k) {
    CircuitLayer layer;
    const std::size_t offset = (first_layer + k) % 2;
    if (offset == 1) layer.push_back({{0}, random_clifford(1, rng)});
    std::size_t q = offset;
    for (; q + 1 < n; q += 2) layer.push_back({{q, q + 1}, random_clifford(2, rng)});
    if (q < n) layer.push_back({{q}, random_clifford(1, rng)});
    c.layers.push_back(std::move(layer));
  }
  return c;
}

CliffordTableau layer_tableau(const CircuitLayer& layer, std::size_t n) {
  CliffordTableau t = CliffordTableau::identity(n);
  for (const auto& block : layer) t = compose(embed(block.local, n, block.qubits), t);
  return t;
}

CliffordTableau circuit_tableau(const Circuit& c) {
  c.validate();
  CliffordTableau t = CliffordTableau::identity(c.n);
  for (const auto& layer : c.layers) t = compose(layer_tableau(layer, c.n), t);
  return t;
}

}  // namespace stabscope
