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

#include "stabscope/cnn/gemm.hpp"

#include <cblas.h>

namespace stabscope::cnn {

namespace {

void call(CBLAS_TRANSPOSE ta, CBLAS_TRANSPOSE tb, std::size_t m, std::size_t n, std::size_t k, const double* a,
          const double* b, double* c) {
  if (m == 0 || n == 0 || k == 0) return;
  const auto lda = static_cast<int>(ta == CblasNoTrans ? k : m);
  const auto ldb = static_cast<int>(tb == CblasNoTrans ? n : k);
  cblas_dgemm(CblasRowMajor, ta, tb, static_cast<int>(m), static_cast<int>(n), static_cast<int>(k), 1.0, a, lda,
              b, ldb, 1.0, c, static_cast<int>(n));
}

}  // namespace

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
  call(CblasNoTrans, CblasNoTrans, m, n, k, a, b, c);
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
  call(CblasNoTrans, CblasTrans, m, n, k, a, b, c);
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
  call(CblasTrans, CblasNoTrans, m, n, k, a, b, c);
}

}  // namespace stabscope::cnn
