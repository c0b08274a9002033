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

#include "stabscope/pauli.hpp"

#include <bit>
#include <stdexcept>

#include "stabscope/errors.hpp"

namespace stabscope {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

void require_same_size(const PauliString& a, const PauliString& b, const char* what) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError(std::string(what) + ": qubit counts differ (" +
                         std::to_string(a.num_qubits()) + " vs " + std::to_string(b.num_qubits()) + ")");
  }
}

// In-place acc <- acc * rhs over raw masks; returns the i-exponent picked up
// by the site-wise products (rhs sign excluded).
int mul_masks(std::span<std::uint64_t> ax, std::span<std::uint64_t> az,
              std::span<const std::uint64_t> bx, std::span<const std::uint64_t> bz) {
  int plus = 0;
  int minus = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    const std::uint64_t x1 = ax[w], z1 = az[w], x2 = bx[w], z2 = bz[w];
    const std::uint64_t y1 = x1 & z1;
    const std::uint64_t only_x1 = x1 & ~z1;
    const std::uint64_t only_z1 = z1 & ~x1;
    plus += std::popcount((y1 & z2 & ~x2) | (only_x1 & z2 & x2) | (only_z1 & x2 & ~z2));
    minus += std::popcount((y1 & x2 & ~z2) | (only_x1 & z2 & ~x2) | (only_z1 & x2 & z2));
    ax[w] = x1 ^ x2;
    az[w] = z1 ^ z2;
  }
  return plus - minus;
}

int mod4(int v) { return ((v % 4) + 4) % 4; }

}  // namespace

char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return '_';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::size_t n) : n_(n), xs_(words_for(n), 0), zs_(words_for(n), 0) {}

PauliString PauliString::parse(std::string_view text) {
  bool neg = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    switch (text[j]) {
      case 'I': case '_': break;
      case 'X': p.set_letter(j, PauliLetter::X); break;
      case 'Y': p.set_letter(j, PauliLetter::Y); break;
      case 'Z': p.set_letter(j, PauliLetter::Z); break;
      default: throw std::invalid_argument("PauliString::parse: bad character '" + std::string(1, text[j]) + "'");
    }
  }
  p.negative_ = neg;
  return p;
}

PauliString PauliString::from_letters(std::span<const std::uint8_t> letters, bool negative) {
  PauliString p(letters.size());
  for (std::size_t j = 0; j < letters.size(); ++j) {
    if (letters[j] > 3) throw std::invalid_argument("PauliString::from_letters: letter out of range");
    p.set_letter(j, static_cast<PauliLetter>(letters[j]));
  }
  p.negative_ = negative;
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t site, PauliLetter letter) {
  if (site >= n) throw std::out_of_range("PauliString::single: site out of range");
  PauliString p(n);
  p.set_letter(site, letter);
  return p;
}

PauliLetter PauliString::letter(std::size_t j) const {
  const bool x = x_bit(j), z = z_bit(j);
  if (x) return z ? PauliLetter::Y : PauliLetter::X;
  return z ? PauliLetter::Z : PauliLetter::I;
}

void PauliString::set_letter(std::size_t j, PauliLetter l) {
  const std::uint64_t bit = std::uint64_t{1} << (j & 63);
  const bool x = l == PauliLetter::X || l == PauliLetter::Y;
  const bool z = l == PauliLetter::Z || l == PauliLetter::Y;
  xs_[j >> 6] = x ? (xs_[j >> 6] | bit) : (xs_[j >> 6] & ~bit);
  zs_[j >> 6] = z ? (zs_[j >> 6] | bit) : (zs_[j >> 6] & ~bit);
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < xs_.size(); ++w)
    if (xs_[w] | zs_[w]) return false;
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) c += std::popcount(xs_[w] | zs_[w]);
  return c;
}

std::vector<std::uint8_t> PauliString::letters() const {
  std::vector<std::uint8_t> out(n_);
  write_letters(out);
  return out;
}

void PauliString::write_letters(std::span<std::uint8_t> out) const {
  if (out.size() != n_) throw DimensionError("PauliString::write_letters: size mismatch");
  for (std::size_t j = 0; j < n_; ++j) out[j] = static_cast<std::uint8_t>(letter(j));
}

std::string PauliString::str() const {
  std::string s(1, negative_ ? '-' : '+');
  for (std::size_t j = 0; j < n_; ++j) s.push_back(letter_char(letter(j)));
  return s;
}

void PauliString::xor_masks(const PauliString& other) {
  require_same_size(*this, other, "PauliString::xor_masks");
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    xs_[w] ^= other.xs_[w];
    zs_[w] ^= other.zs_[w];
  }
}

PhasedPauli pauli_mul(const PauliString& a, const PauliString& b) {
  require_same_size(a, b, "pauli_mul");
  PhasedPauli out{a, 0};
  out.string.set_negative(false);
  int log_i = mul_masks(out.string.x_words(), out.string.z_words(), b.x_words(), b.z_words());
  if (a.negative()) log_i += 2;
  if (b.negative()) log_i += 2;
  out.phase = mod4(log_i);
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_size(a, b, "commutes");
  const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  int parity = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    parity ^= std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w])) & 1;
  }
  return parity == 0;
}

CliffordTableau CliffordTableau::identity(std::size_t n) {
  CliffordTableau t;
  t.n_ = n;
  for (std::size_t j = 0; j < n; ++j) {
    t.x_images_.push_back(PauliString::single(n, j, PauliLetter::X));
    t.z_images_.push_back(PauliString::single(n, j, PauliLetter::Z));
  }
  return t;
}

CliffordTableau CliffordTableau::from_images(std::vector<PauliString> x_images,
                                             std::vector<PauliString> z_images) {
  const std::size_t n = x_images.size();
  if (z_images.size() != n) throw DimensionError("CliffordTableau::from_images: image count mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (x_images[j].num_qubits() != n || z_images[j].num_qubits() != n) {
      throw DimensionError("CliffordTableau::from_images: image has wrong qubit count");
    }
  }
  CliffordTableau t;
  t.n_ = n;
  t.x_images_ = std::move(x_images);
  t.z_images_ = std::move(z_images);
  if (!t.is_symplectic()) throw std::invalid_argument("CliffordTableau::from_images: images are not symplectic");
  return t;
}

PauliString CliffordTableau::conjugate(const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw DimensionError("CliffordTableau::conjugate: tableau has " + std::to_string(n_) +
                         " qubits, Pauli has " + std::to_string(p.num_qubits()));
  }
  PauliString acc(n_);
  int log_i = p.negative() ? 2 : 0;
  const auto px = p.x_words(), pz = p.z_words();
  for (std::size_t w = 0; w < px.size(); ++w) {
    std::uint64_t support = px[w] | pz[w];
    while (support) {
      const std::size_t j = w * 64 + std::countr_zero(support);
      support &= support - 1;
      const bool x = p.x_bit(j), z = p.z_bit(j);
      if (x) {
        const PauliString& img = x_images_[j];
        log_i += mul_masks(acc.x_words(), acc.z_words(), img.x_words(), img.z_words());
        if (img.negative()) log_i += 2;
      }
      if (z) {
        const PauliString& img = z_images_[j];
        log_i += mul_masks(acc.x_words(), acc.z_words(), img.x_words(), img.z_words());
        if (img.negative()) log_i += 2;
      }
      if (x && z) log_i += 1;  // Y = i X Z
    }
  }
  log_i = mod4(log_i);
  if (log_i & 1) throw std::logic_error("CliffordTableau::conjugate: non-Hermitian image (tableau corrupt)");
  acc.set_negative(log_i == 2);
  return acc;
}

bool CliffordTableau::is_symplectic() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!commutes(x_images_[i], z_images_[j]) != (i == j)) return false;
      if (j > i && !commutes(x_images_[i], x_images_[j])) return false;
      if (j > i && !commutes(z_images_[i], z_images_[j])) return false;
    }
  }
  return true;
}

std::string CliffordTableau::str() const {
  std::string s;
  for (std::size_t j = 0; j < n_; ++j) {
    s += "X" + std::to_string(j) + " -> " + x_images_[j].str() + "\n";
    s += "Z" + std::to_string(j) + " -> " + z_images_[j].str() + "\n";
  }
  return s;
}

CliffordTableau compose(const CliffordTableau& outer, const CliffordTableau& inner) {
  if (outer.num_qubits() != inner.num_qubits()) throw DimensionError("compose: qubit counts differ");
  const std::size_t n = inner.num_qubits();
  std::vector<PauliString> xs, zs;
  xs.reserve(n);
  zs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs.push_back(outer.conjugate(inner.x_image(j)));
    zs.push_back(outer.conjugate(inner.z_image(j)));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

CliffordTableau inverse(const CliffordTableau& t) {
  const std::size_t n = t.num_qubits();
  // Unsigned preimages follow from the symplectic form: the X_k (Z_k)
  // coefficient of the preimage of v is <v, U Z_k U^dag> (<v, U X_k U^dag>).
  auto preimage = [&](const PauliString& v) {
    PauliString out(n);
    for (std::size_t k = 0; k < n; ++k) {
      const bool x = !commutes(v, t.z_image(k));
      const bool z = !commutes(v, t.x_image(k));
      out.set_letter(k, x ? (z ? PauliLetter::Y : PauliLetter::X) : (z ? PauliLetter::Z : PauliLetter::I));
    }
    if (t.conjugate(out).negative()) out.set_negative(true);
    return out;
  };
  std::vector<PauliString> xs, zs;
  for (std::size_t j = 0; j < n; ++j) {
    xs.push_back(preimage(PauliString::single(n, j, PauliLetter::X)));
    zs.push_back(preimage(PauliString::single(n, j, PauliLetter::Z)));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

CliffordTableau embed(const CliffordTableau& local, std::size_t n, std::span<const std::size_t> qubits) {
  const std::size_t k = local.num_qubits();
  if (qubits.size() != k) throw DimensionError("embed: qubit list length differs from tableau size");
  for (std::size_t a = 0; a < k; ++a) {
    if (qubits[a] >= n) throw std::out_of_range("embed: qubit index out of range");
    for (std::size_t b = a + 1; b < k; ++b)
      if (qubits[a] == qubits[b]) throw std::invalid_argument("embed: repeated qubit");
  }
  auto lift = [&](const PauliString& p) {
    PauliString out(n);
    for (std::size_t a = 0; a < k; ++a) out.set_letter(qubits[a], p.letter(a));
    out.set_negative(p.negative());
    return out;
  };
  CliffordTableau t = CliffordTableau::identity(n);
  std::vector<PauliString> xs, zs;
  for (std::size_t j = 0; j < n; ++j) {
    xs.push_back(t.x_image(j));
    zs.push_back(t.z_image(j));
  }
  for (std::size_t a = 0; a < k; ++a) {
    xs[qubits[a]] = lift(local.x_image(a));
    zs[qubits[a]] = lift(local.z_image(a));
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

CliffordTableau gate_tableau(const Gate& gate, std::size_t n) {
  auto check = [n](std::size_t q) {
    if (q >= n) throw std::out_of_range("gate_tableau: qubit index " + std::to_string(q) + " >= " + std::to_string(n));
  };
  check(gate.a);
  CliffordTableau id = CliffordTableau::identity(n);
  std::vector<PauliString> xs, zs;
  for (std::size_t j = 0; j < n; ++j) {
    xs.push_back(id.x_image(j));
    zs.push_back(id.z_image(j));
  }
  switch (gate.kind) {
    case Gate::Kind::H:
      std::swap(xs[gate.a], zs[gate.a]);
      break;
    case Gate::Kind::S:
      xs[gate.a] = PauliString::single(n, gate.a, PauliLetter::Y);
      break;
    case Gate::Kind::CNOT: {
      check(gate.b);
      if (gate.a == gate.b) throw std::invalid_argument("gate_tableau: CNOT control equals target");
      // X_c -> X_c X_t, Z_t -> Z_c Z_t
      xs[gate.a].set_letter(gate.b, PauliLetter::X);
      zs[gate.b].set_letter(gate.a, PauliLetter::Z);
      break;
    }
  }
  return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

namespace {

PauliString random_masks(std::size_t n, Rng& rng) {
  PauliString p(n);
  auto fill = [&](std::span<std::uint64_t> words) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t v = rng();
      const std::size_t bits = std::min<std::size_t>(64, n - w * 64);
      if (bits < 64) v &= (std::uint64_t{1} << bits) - 1;
      words[w] = v;
    }
  };
  fill(p.x_words());
  fill(p.z_words());
  return p;
}

struct SymplecticBasis {
  std::vector<PauliString> xs;
  std::vector<PauliString> zs;
};

// Uniform element of Sp(2n, GF(2)) as generator images; signs all +1.
// The image pair of (X_0, Z_0) is drawn uniformly, the rest of the basis is
// a fixed completion of it, and a uniform element of the stabilizer
// subgroup (a recursive draw on n-1 qubits) is composed in.
SymplecticBasis random_symplectic(std::size_t n, Rng& rng) {
  SymplecticBasis out;
  if (n == 0) return out;

  PauliString p(n);
  do {
    p = random_masks(n, rng);
  } while (p.is_identity());
  PauliString q(n);
  do {
    q = random_masks(n, rng);
  } while (commutes(p, q));

  // Project every standard generator onto the symplectic complement of
  // span{p, q}, then pair the survivors up by symplectic Gram-Schmidt.
  std::vector<PauliString> pool;
  pool.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (PauliLetter l : {PauliLetter::X, PauliLetter::Z}) {
      PauliString v = PauliString::single(n, j, l);
      const bool with_q = !commutes(v, q);
      const bool with_p = !commutes(v, p);
      if (with_q) v.xor_masks(p);
      if (with_p) v.xor_masks(q);
      pool.push_back(std::move(v));
    }
  }
  std::vector<PauliString> es, fs;
  while (es.size() + 1 < n) {
    std::size_t ia = 0;
    while (pool[ia].is_identity()) ++ia;
    PauliString a = pool[ia];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(ia));
    std::size_t ib = 0;
    while (commutes(a, pool[ib])) ++ib;
    PauliString b = pool[ib];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(ib));
    for (auto& w : pool) {
      const bool with_b = !commutes(w, b);
      const bool with_a = !commutes(w, a);
      if (with_b) w.xor_masks(a);
      if (with_a) w.xor_masks(b);
    }
    es.push_back(std::move(a));
    fs.push_back(std::move(b));
  }

  SymplecticBasis sub = random_symplectic(n - 1, rng);
  auto lift = [&](const PauliString& s) {
    PauliString v(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (s.x_bit(k)) v.xor_masks(es[k]);
      if (s.z_bit(k)) v.xor_masks(fs[k]);
    }
    return v;
  };
  out.xs.push_back(std::move(p));
  out.zs.push_back(std::move(q));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out.xs.push_back(lift(sub.xs[k]));
    out.zs.push_back(lift(sub.zs[k]));
  }
  return out;
}

}  // namespace

CliffordTableau random_clifford(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_clifford: n must be >= 1");
  SymplecticBasis basis = random_symplectic(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    basis.xs[j].set_negative(coin(rng));
    basis.zs[j].set_negative(coin(rng));
  }
  return CliffordTableau::from_images(std::move(basis.xs), std::move(basis.zs));
}

std::vector<CliffordTableau> enumerate_cliffords_1q() {
  std::vector<CliffordTableau> out;
  const PauliLetter letters[] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
  for (PauliLetter lx : letters) {
    for (PauliLetter lz : letters) {
      if (lx == lz) continue;
      for (int signs = 0; signs < 4; ++signs) {
        PauliString x = PauliString::single(1, 0, lx);
        PauliString z = PauliString::single(1, 0, lz);
        x.set_negative(signs & 1);
        z.set_negative(signs & 2);
        out.push_back(CliffordTableau::from_images({x}, {z}));
      }
    }
  }
  return out;
}

}  // namespace stabscope
