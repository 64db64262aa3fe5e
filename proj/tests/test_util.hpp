// Copyright 2026 The qclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Helpers shared by the unit and acceptance suites. Random objects are
// generated here without going through the library's factorizations, so
// they can serve as independent inputs.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qclone/numerics.hpp"

namespace qclone::testing {

inline cplx gaussian_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

inline CMatrix random_matrix(std::size_t rows, std::size_t cols,
                             std::mt19937_64& rng) {
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = gaussian_complex(rng);
  return m;
}

/// Haar-ish random unitary: classical Gram-Schmidt on Gaussian columns.
inline CMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  CMatrix g = random_matrix(n, n, rng);
  CMatrix q(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<cplx> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = g(r, c);
    for (std::size_t p = 0; p < c; ++p) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, p)) * v[r];
      for (std::size_t r = 0; r < n; ++r) v[r] -= dot * q(r, p);
    }
    double nrm = 0.0;
    for (auto z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < n; ++r) q(r, c) = v[r] / nrm;
  }
  return q;
}

inline CVector random_state(std::size_t dim, std::mt19937_64& rng) {
  CVector v(dim);
  double nrm = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = gaussian_complex(rng);
    nrm += std::norm(v[i]);
  }
  nrm = std::sqrt(nrm);
  for (std::size_t i = 0; i < dim; ++i) v[i] /= nrm;
  return v;
}

/// Element-by-element triple loop product.
inline CMatrix naive_product(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline CMatrix naive_adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

}  // namespace qclone::testing
