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

#include "stabscope/magic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "stabscope/errors.hpp"

namespace stabscope {

namespace {

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds enumeration cap " +
                        std::to_string(cap));
  }
}

// Letter code for (x, z) bits: I=0, X=1, Y=2, Z=3.
constexpr std::uint8_t letter_code(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

void walsh_hadamard(std::vector<cplx>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const cplx a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace

PauliProbs1q pauli_probs_1q(const SingleQubitState& q) {
  const double x = q.expect_x(), y = q.expect_y(), z = q.expect_z();
  return {0.5, 0.5 * x * x, 0.5 * y * y, 0.5 * z * z};
}

std::size_t pauli_index(const PauliString& p) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < p.num_qubits(); ++j) idx = idx * 4 + static_cast<std::size_t>(p.letter(j));
  return idx;
}

PauliString pauli_from_index(std::size_t index, std::size_t n) {
  PauliString p(n);
  for (std::size_t j = n; j-- > 0;) {
    p.set_letter(j, static_cast<PauliLetter>(index & 3));
    index >>= 2;
  }
  return p;
}

std::vector<double> pauli_expectations(const DenseState& s, std::size_t cap) {
  const std::size_t n = s.num_qubits();
  check_cap(n, cap, "pauli_expectations");
  const std::size_t dim = s.dim();
  const auto& a = s.amplitudes();
  std::vector<double> out(dim * dim, 0.0);
  std::vector<cplx> f(dim);
  for (std::size_t xm = 0; xm < dim; ++xm) {
    for (std::size_t i = 0; i < dim; ++i) f[i] = std::conj(a[i ^ xm]) * a[i];
    walsh_hadamard(f);
    for (std::size_t zm = 0; zm < dim; ++zm) {
      cplx v = f[zm];
      switch (std::popcount(xm & zm) & 3) {
        case 1: v *= cplx(0.0, 1.0); break;
        case 2: v = -v; break;
        case 3: v *= cplx(0.0, -1.0); break;
        default: break;
      }
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t bit = n - 1 - j;
        idx = idx * 4 + letter_code((xm >> bit) & 1, (zm >> bit) & 1);
      }
      out[idx] = v.real();
    }
  }
  return out;
}

std::vector<double> pauli_distribution(const DenseState& s, std::size_t cap) {
  std::vector<double> e = pauli_expectations(s, cap);
  const double inv_d = 1.0 / static_cast<double>(s.dim());
  for (auto& v : e) v = v * v * inv_d;
  return e;
}

double sre(const DenseState& s, double alpha, std::size_t cap) {
  if (alpha == 1.0) throw std::invalid_argument("sre: alpha = 1 is not supported");
  const std::vector<double> e = pauli_expectations(s, cap);
  double sum = 0.0;
  for (double v : e) sum += std::pow(v * v, alpha);
  sum /= static_cast<double>(s.dim());
  return magic_log(sum) / (1.0 - alpha);
}

double m_lin(const DenseState& s, std::size_t cap) {
  const std::vector<double> e = pauli_expectations(s, cap);
  double sum = 0.0;
  for (double v : e) sum += v * v * v * v;
  return 1.0 - sum / static_cast<double>(s.dim());
}

double m2_from_mlin(double m) {
  if (!(m < 1.0)) throw std::invalid_argument("m2_from_mlin: M_lin must be < 1");
  return -magic_log(1.0 - m);
}

namespace {
double purity_factor(const SingleQubitState& q) {
  const double x = q.expect_x(), y = q.expect_y(), z = q.expect_z();
  return 0.5 * (1.0 + x * x * x * x + y * y * y * y + z * z * z * z);
}
}  // namespace

double m2_product(const ProductState& p) {
  double total = 0.0;
  for (const auto& q : p.qubits()) total -= magic_log(purity_factor(q));
  return total;
}

double m_lin_product(const ProductState& p) {
  double prod = 1.0;
  for (const auto& q : p.qubits()) prod *= purity_factor(q);
  return 1.0 - prod;
}

ByteMatrix sample_pauli_product(const ProductState& p, std::size_t count, Rng& rng) {
  const std::size_t n = p.num_qubits();
  std::vector<std::array<double, 3>> cdf(n);
  for (std::size_t j = 0; j < n; ++j) {
    const PauliProbs1q pr = pauli_probs_1q(p.qubit(j));
    const double total = pr[0] + pr[1] + pr[2] + pr[3];
    cdf[j] = {pr[0] / total, (pr[0] + pr[1]) / total, (pr[0] + pr[1] + pr[2]) / total};
  }
  ByteMatrix out(count, n);
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = uniform01(rng);
      std::uint8_t l = 3;
      if (u < cdf[j][0]) l = 0;
      else if (u < cdf[j][1]) l = 1;
      else if (u < cdf[j][2]) l = 2;
      out(r, j) = l;
    }
  }
  return out;
}

ByteMatrix sample_pauli_dense(const DenseState& s, std::size_t count, Rng& rng, std::size_t cap) {
  const std::vector<double> pi = pauli_distribution(s, cap);
  std::vector<double> cdf(pi.size());
  double run = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    run += pi[i];
    cdf[i] = run;
  }
  const std::size_t n = s.num_qubits();
  ByteMatrix out(count, n);
  for (std::size_t r = 0; r < count; ++r) {
    const double u = uniform01(rng) * run;
    std::size_t idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, pi.size() - 1);
    for (std::size_t j = n; j-- > 0;) {
      out(r, j) = static_cast<std::uint8_t>(idx & 3);
      idx >>= 2;
    }
  }
  return out;
}

ByteMatrix evolve_pauli_snapshots(const ByteMatrix& rows, const CliffordTableau& t) {
  if (rows.cols != t.num_qubits()) {
    throw DimensionError("evolve_pauli_snapshots: rows have " + std::to_string(rows.cols) +
                         " sites, tableau has " + std::to_string(t.num_qubits()));
  }
  ByteMatrix out(rows.rows, rows.cols);
  for (std::size_t r = 0; r < rows.rows; ++r) {
    const PauliString p = PauliString::from_letters(rows.row(r));
    t.conjugate(p).write_letters(out.row(r));
  }
  return out;
}

}  // namespace stabscope
