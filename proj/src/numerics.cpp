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

#include "qclone/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qclone {

namespace {

constexpr int kMaxJacobiSweeps = 100;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_square(const CMatrix& a, const char* op) {
  if (!a.is_square()) {
    std::ostringstream os;
    os << op << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(os.str());
  }
}

}  // namespace

CVector CVector::basis(std::size_t dim, std::size_t index) {
  CVector v(dim);
  v[index] = 1.0;
  return v;
}

double CVector::norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

bool CVector::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), finite);
}

cplx inner(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

CVector normalized(const CVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw DomainError("normalized: zero vector");
  CVector out = v;
  for (auto& z : out.entries()) z /= n;
  return out;
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) return {};
  CMatrix m(columns.front().dim(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void CMatrix::set_column(std::size_t c, const CVector& v) {
  if (v.dim() != rows_) throw DimensionError("set_column: dimension mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                       std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block: out of range");
  CMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw DimensionError("set_block: out of range");
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), finite);
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("+: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("-: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols() != v.dim()) throw DimensionError("matrix-vector: dimension mismatch");
  CVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matmul: " << a.rows() << "x" << a.cols() << " times " << b.rows() << "x"
       << b.cols();
    throw DimensionError(os.str());
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c)));
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

double max_abs_diff(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double hermitian_defect(const CMatrix& a) {
  require_square(a, "hermitian_defect");
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r; c < a.cols(); ++c)
      m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
  return m;
}

Eigensystem hermitian_eigen(const CMatrix& a, double tol) {
  require_square(a, "hermitian_eigen");
  if (hermitian_defect(a) > tol * std::max(1.0, max_abs(a))) {
    std::ostringstream os;
    os << "hermitian_eigen: input is not Hermitian (defect " << hermitian_defect(a)
       << ")";
    throw SymmetryError(os.str());
  }
  const std::size_t n = a.rows();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
  CMatrix q = CMatrix::identity(n);

  double scale = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scale += std::norm(m(r, c));
  scale = std::sqrt(scale);

  bool converged = n < 2 || scale == 0.0;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += std::norm(m(p, r));
    if (std::sqrt(off) <= 1e-16 * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const cplx apq = m(p, r);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const cplx phase = apq / mag;
        const double app = m(p, p).real();
        const double aqq = m(r, r).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on (p, r).
        const cplx j00 = c;
        const cplx j01 = s;
        const cplx j10 = -s * std::conj(phase);
        const cplx j11 = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx mkp = m(k, p);
          const cplx mkq = m(k, r);
          m(k, p) = mkp * j00 + mkq * j10;
          m(k, r) = mkp * j01 + mkq * j11;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx mpk = m(p, k);
          const cplx mqk = m(r, k);
          m(p, k) = std::conj(j00) * mpk + std::conj(j10) * mqk;
          m(r, k) = std::conj(j01) * mpk + std::conj(j11) * mqk;
        }
        m(p, r) = 0.0;
        m(r, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(r, r) = m(r, r).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx qkp = q(k, p);
          const cplx qkq = q(k, r);
          q(k, p) = qkp * j00 + qkq * j10;
          q(k, r) = qkp * j01 + qkq * j11;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += std::norm(m(p, r));
    if (std::sqrt(off) > 1e-14 * scale)
      throw ConvergenceError("hermitian_eigen: Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return m(x, x).real() < m(y, y).real();
  });

  Eigensystem out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = m(src, src).real();
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) best = std::max(best, std::abs(q(k, src)));
    std::size_t pivot = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(q(k, src)) >= best * (1.0 - 1e-12)) {
        pivot = k;
        break;
      }
    }
    const cplx z = q(pivot, src);
    const cplx rephase = std::conj(z) / std::abs(z);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = q(k, src) * rephase;
    out.vectors(pivot, j) = std::abs(z);
  }
  return out;
}

CMatrix cholesky_psd(const CMatrix& a, double tol) {
  require_square(a, "cholesky_psd");
  const Eigensystem eig = hermitian_eigen(a, tol);
  if (!eig.values.empty() && eig.values.front() < -tol) {
    std::ostringstream os;
    os << "cholesky_psd: matrix is not positive semidefinite (eigenvalue "
       << eig.values.front() << ")";
    throw NotPSDError(os.str(), eig.values.front());
  }
  const std::size_t n = a.rows();
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= tol) continue;  // zero pivot: column stays zero
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

std::size_t cholesky_rank(const CMatrix& l) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(l.rows(), l.cols()); ++i)
    if (l(i, i) != cplx{0.0, 0.0}) ++r;
  return r;
}

namespace {

double one_norm(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

CMatrix inverse(const CMatrix& a) {
  require_square(a, "inverse");
  const std::size_t n = a.rows();
  CMatrix work = a;
  CMatrix inv = CMatrix::identity(n);
  const double scale = max_abs(a);
  if (scale == 0.0 && n > 0) throw SingularError("inverse: zero matrix");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(work(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(work(r, col)) > best) {
        best = std::abs(work(r, col));
        piv = r;
      }
    }
    if (best <= 1e-14 * scale) throw SingularError("inverse: matrix is singular");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(col, c), work(piv, c));
        std::swap(inv(col, c), inv(piv, c));
      }
    }
    const cplx d = work(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const cplx f = work(r, col);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  if (one_norm(a) * one_norm(inv) > 1e13)
    throw SingularError("inverse: matrix is ill-conditioned");
  return inv;
}

double unitary_residual(const CMatrix& a) {
  require_square(a, "unitary_residual");
  return max_abs_diff(adjoint(a) * a, CMatrix::identity(a.rows()));
}

CMatrix expi_hermitian(const CMatrix& h, double scale) {
  const Eigensystem eig = hermitian_eigen(h);
  const std::size_t n = h.rows();
  std::vector<cplx> phases(n);
  for (std::size_t j = 0; j < n; ++j)
    phases[j] = std::exp(cplx{0.0, -scale * eig.values[j]});
  return eig.vectors * CMatrix::diagonal(phases) * adjoint(eig.vectors);
}

CMatrix sqrt_psd(const CMatrix& a, double tol) {
  const Eigensystem eig = hermitian_eigen(a, tol);
  if (!eig.values.empty() && eig.values.front() < -tol)
    throw NotPSDError("sqrt_psd: negative eigenvalue", eig.values.front());
  std::vector<double> roots(eig.values.size());
  for (std::size_t j = 0; j < roots.size(); ++j)
    roots[j] = std::sqrt(std::max(0.0, eig.values[j]));
  return eig.vectors * CMatrix::diagonal(std::span<const double>(roots)) *
         adjoint(eig.vectors);
}

CMatrix nearest_unitary(const CMatrix& a) {
  require_square(a, "nearest_unitary");
  // a = W P with P = (a^dagger a)^{1/2}; W = a P^{-1}.
  const Eigensystem eig = hermitian_eigen(adjoint(a) * a, 1e-8);
  std::vector<double> inv_roots(eig.values.size());
  for (std::size_t j = 0; j < inv_roots.size(); ++j) {
    if (eig.values[j] <= 1e-24) throw SingularError("nearest_unitary: singular input");
    inv_roots[j] = 1.0 / std::sqrt(eig.values[j]);
  }
  return a * eig.vectors * CMatrix::diagonal(std::span<const double>(inv_roots)) *
         adjoint(eig.vectors);
}

CMatrix orthonormal_complement(const CMatrix& basis) {
  const std::size_t d = basis.rows();
  const std::size_t r = basis.cols();
  if (r > d) throw DimensionError("orthonormal_complement: too many columns");
  std::vector<CVector> frame;
  frame.reserve(d);
  for (std::size_t c = 0; c < r; ++c) frame.push_back(basis.column(c));
  std::vector<CVector> extra;
  for (std::size_t e = 0; e < d && frame.size() < d; ++e) {
    CVector v = CVector::basis(d, e);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& f : frame) {
        const cplx proj = inner(f, v);
        for (std::size_t k = 0; k < d; ++k) v[k] -= proj * f[k];
      }
    }
    const double nv = v.norm();
    if (nv < 1e-6) continue;
    for (auto& z : v.entries()) z /= nv;
    frame.push_back(v);
    extra.push_back(frame.back());
  }
  if (frame.size() != d)
    throw RankError("orthonormal_complement: input columns are not independent");
  CMatrix out(d, extra.size());
  for (std::size_t c = 0; c < extra.size(); ++c) out.set_column(c, extra[c]);
  return out;
}

}  // namespace qclone
