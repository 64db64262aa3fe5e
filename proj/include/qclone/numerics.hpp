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

// Dense complex linear algebra used throughout the library. Everything here
// is a pure function of its inputs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "qclone/errors.hpp"

namespace qclone {

using cplx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : entries_(dim, cplx{0.0, 0.0}) {}
  CVector(std::initializer_list<cplx> values) : entries_(values) {}
  explicit CVector(std::vector<cplx> values) : entries_(std::move(values)) {}

  static CVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return entries_.size(); }
  cplx& operator[](std::size_t i) { return entries_[i]; }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const cplx> entries() const noexcept { return entries_; }
  std::span<cplx> entries() noexcept { return entries_; }

  double norm() const;
  bool all_finite() const;

  bool operator==(const CVector&) const = default;

 private:
  std::vector<cplx> entries_;
};

/// <a|b>, antilinear in the first argument.
cplx inner(const CVector& a, const CVector& b);
CVector kron(const CVector& a, const CVector& b);
CVector normalized(const CVector& v);

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> diag);
  static CMatrix diagonal(std::span<const double> diag);
  /// Matrix whose columns are the given vectors (all of equal dimension).
  static CMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, const CVector& v);
  /// Copy of the block [r0, r0+nr) x [c0, c0+nc).
  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& b);

  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  bool operator==(const CMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& v);

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);
double hermitian_defect(const CMatrix& a);

struct Eigensystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // unitary, column j pairs with values[j]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Eigenvalues ascending;
/// each eigenvector is rephased so its largest-magnitude entry is real
/// positive (first such entry on ties).
Eigensystem hermitian_eigen(const CMatrix& a, double tol = kDefaultTol);

/// Lower-triangular L with L L^dagger = a for positive semidefinite a.
/// Pivots at or below tol are treated as zero, so rank-deficient input is
/// accepted. Throws NotPSDError when an eigenvalue is below -tol.
CMatrix cholesky_psd(const CMatrix& a, double tol = kDefaultTol);

/// Number of nonzero pivots (nonzero diagonal entries) of a Cholesky factor.
std::size_t cholesky_rank(const CMatrix& l);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularError when the
/// matrix is singular or its 1-norm condition estimate exceeds 1e13.
CMatrix inverse(const CMatrix& a);

/// max |a^dagger a - I|.
double unitary_residual(const CMatrix& a);

/// exp(-i * scale * h) for Hermitian h.
CMatrix expi_hermitian(const CMatrix& h, double scale);

/// Principal square root of a Hermitian positive semidefinite matrix.
CMatrix sqrt_psd(const CMatrix& a, double tol = kDefaultTol);

/// Closest unitary in Frobenius norm (unitary polar factor).
CMatrix nearest_unitary(const CMatrix& a);

/// Columns completing the orthonormal columns of `basis` to an orthonormal
/// basis, found by Gram-Schmidt over the standard basis vectors in index
/// order. Result has basis.rows() - basis.cols() columns.
CMatrix orthonormal_complement(const CMatrix& basis);

}  // namespace qclone
