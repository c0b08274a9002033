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

#include "stabscope/pauli.hpp"
#include "stabscope/rng.hpp"
#include "stabscope/statevector.hpp"

namespace stabscope {

enum class StateLabel : int { kStabilizer = 0, kMagic = 1 };

struct LabeledState {
  ProductState state;
  StateLabel label = StateLabel::kStabilizer;
  /// M_2 / N of the product state.
  double m2_density = 0.0;
};

/// Haar-random pure qubit: cos(theta) and phi uniform.
SingleQubitState random_haar_1q(Rng& rng);

/// Uniform over |0>, |1>, |+>, |->, |+i>, |-i>.
SingleQubitState random_stab_1q(Rng& rng);

/// The six single-qubit stabilizer states in the order listed above.
SingleQubitState stabilizer_1q(int which);

/// (|0> + e^{i phi}|1>)/sqrt(2).
SingleQubitState phase_state(double phi);

/// Stabilizer label draws stabilizer factors; magic label draws Haar factors.
LabeledState random_product(std::size_t n, StateLabel label, Rng& rng);

/// Brickwork of uniform two-qubit Cliffords. Even layers pair (0,1),(2,3),...;
/// odd layers pair (1,2),(3,4),... Any qubit left unpaired by a layer gets a
/// uniform single-qubit Clifford. `first_layer` offsets the even/odd pattern.
Circuit random_brickwork_circuit(std::size_t n, std::size_t depth, Rng& rng, std::size_t first_layer = 0);

/// Composition of every block in application order.
CliffordTableau circuit_tableau(const Circuit& c);

/// Tableau of a single layer.
CliffordTableau layer_tableau(const CircuitLayer& layer, std::size_t n);

}  // namespace stabscope
