#include "dominion/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace dominion {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const RVec& d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw Error(ErrorCode::ShapeMismatch, "matrix product shape mismatch");
  Matrix m(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cplx aik = (*this)(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < rhs.cols_; ++j) m(i, j) += aik * rhs(k, j);
    }
  }
  return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (!same_shape(rhs)) throw Error(ErrorCode::ShapeMismatch, "matrix sum shape mismatch");
  Matrix m = *this;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += rhs.a_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (!same_shape(rhs)) throw Error(ErrorCode::ShapeMismatch, "matrix difference shape mismatch");
  Matrix m = *this;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= rhs.a_[i];
  return m;
}

Matrix Matrix::operator*(cplx s) const {
  Matrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

CVec Matrix::apply(const CVec& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector dimension mismatch");
  CVec out(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    cplx acc{};
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double Matrix::max_abs_entry() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

double Matrix::hermitian_defect() const {
  double d = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool Matrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  if (tol < 0.0) tol = 1e-12 * (1.0 + max_abs_entry());
  return hermitian_defect() <= tol;
}

Matrix Matrix::block(int row0, int col0, int nrows, int ncols) const {
  Matrix m(nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
  return m;
}

void Matrix::set_block(int row0, int col0, const Matrix& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

}  // namespace dominion
