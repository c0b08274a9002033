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
#include <string>
#include <string_view>
#include <vector>

#include "stabscope/rng.hpp"

namespace stabscope {

/// Site letters. The numeric values double as the snapshot encoding.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(PauliLetter l);

/// Hermitian N-site Pauli operator: packed x/z bit masks plus a global sign.
/// A site with both bits set denotes the Hermitian Y (not XZ).
class PauliString {
 public:
  explicit PauliString(std::size_t n = 0);

  /// Parses "+XYZ_", "-XIZ" or "XZ". Both 'I' and '_' denote identity.
  static PauliString parse(std::string_view text);
  static PauliString from_letters(std::span<const std::uint8_t> letters, bool negative = false);
  static PauliString single(std::size_t n, std::size_t site, PauliLetter letter);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_words() const { return xs_.size(); }

  bool x_bit(std::size_t j) const { return (xs_[j >> 6] >> (j & 63)) & 1; }
  bool z_bit(std::size_t j) const { return (zs_[j >> 6] >> (j & 63)) & 1; }
  PauliLetter letter(std::size_t j) const;
  void set_letter(std::size_t j, PauliLetter l);

  bool negative() const { return negative_; }
  int sign() const { return negative_ ? -1 : 1; }
  void set_negative(bool neg) { negative_ = neg; }

  /// True if every site is I (the sign is ignored).
  bool is_identity() const;
  std::size_t weight() const;

  std::vector<std::uint8_t> letters() const;
  void write_letters(std::span<std::uint8_t> out) const;

  std::string str() const;

  std::span<const std::uint64_t> x_words() const { return xs_; }
  std::span<const std::uint64_t> z_words() const { return zs_; }
  std::span<std::uint64_t> x_words() { return xs_; }
  std::span<std::uint64_t> z_words() { return zs_; }

  /// Adds masks over GF(2); the sign is left alone. Symplectic-vector use only.
  void xor_masks(const PauliString& other);

  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  bool negative_ = false;
};

/// A Pauli string with a phase i^phase. The string's own sign is always +1;
/// all phase information sits in `phase` (0..3).
struct PhasedPauli {
  PauliString string;
  int phase = 0;

  friend bool operator==(const PhasedPauli& a, const PhasedPauli& b) = default;
};

/// Operator product a*b.
PhasedPauli pauli_mul(const PauliString& a, const PauliString& b);

/// True iff the symplectic form of a and b vanishes.
bool commutes(const PauliString& a, const PauliString& b);

/// Conjugation action P -> U P U^dagger of a Clifford U, stored as the
/// images of the X_j and Z_j generators. The global phase of U is not kept.
class CliffordTableau {
 public:
  CliffordTableau() = default;

  static CliffordTableau identity(std::size_t n);
  /// Throws DimensionError on size mismatch and std::invalid_argument if the
  /// images do not satisfy the symplectic relations.
  static CliffordTableau from_images(std::vector<PauliString> x_images,
                                     std::vector<PauliString> z_images);

  std::size_t num_qubits() const { return n_; }
  const PauliString& x_image(std::size_t j) const { return x_images_[j]; }
  const PauliString& z_image(std::size_t j) const { return z_images_[j]; }

  PauliString conjugate(const PauliString& p) const;
  bool is_symplectic() const;
  std::string str() const;

  friend bool operator==(const CliffordTableau& a, const CliffordTableau& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> x_images_;
  std::vector<PauliString> z_images_;
};

/// Conjugation by outer*inner: conjugate(compose(a, b), p) == a(b(p)).
CliffordTableau compose(const CliffordTableau& outer, const CliffordTableau& inner);

/// Tableau of U^dagger.
CliffordTableau inverse(const CliffordTableau& t);

/// Places a k-qubit tableau on the listed qubits of an n-qubit register.
CliffordTableau embed(const CliffordTableau& local, std::size_t n, std::span<const std::size_t> qubits);

struct Gate {
  enum class Kind { H, S, CNOT };
  Kind kind;
  std::size_t a;
  std::size_t b = 0;

  static Gate h(std::size_t q) { return {Kind::H, q, 0}; }
  static Gate s(std::size_t q) { return {Kind::S, q, 0}; }
  static Gate cnot(std::size_t control, std::size_t target) { return {Kind::CNOT, control, target}; }
};

CliffordTableau gate_tableau(const Gate& gate, std::size_t n);

/// Uniformly random element of the n-qubit Clifford group modulo phases.
CliffordTableau random_clifford(std::size_t n, Rng& rng);

/// All 24 single-qubit Cliffords modulo phases.
std::vector<CliffordTableau> enumerate_cliffords_1q();

}  // namespace stabscope
