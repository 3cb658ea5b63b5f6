#pragma once

#include <complex>
#include <vector>

#include "dominion/errors.hpp"

namespace dominion {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline CVec to_cvec(const RVec& v) { return CVec(v.begin(), v.end()); }
inline RVec re_part(const CVec& v) {
  RVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
  return r;
}

// Dense complex matrix, row-major. Sized for desk scale (dim <= ~64).
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix diagonal(const RVec& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(cplx s) const;
  CVec apply(const CVec& v) const;

  double frobenius_norm() const;
  double max_abs_entry() const;
  double hermitian_defect() const;  // max |a_ij - conj(a_ji)|

  // max |a_ij - conj(a_ji)| <= 1e-12 * (1 + max |entry|) unless overridden
  bool is_hermitian(double tol = -1.0) const;

  Matrix block(int row0, int col0, int nrows, int ncols) const;
  void set_block(int row0, int col0, const Matrix& b);

  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

inline Matrix operator*(cplx s, const Matrix& m) { return m * s; }

}  // namespace dominion
