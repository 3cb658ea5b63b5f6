#include "dominion/operator_form.hpp"

#include <cmath>

namespace dominion {

OperatorForm::OperatorForm(Space space, Matrix op_weighted)
    : space_(std::move(space)), op_(std::move(op_weighted)) {
  if (op_.rows() != space_.dim() || op_.cols() != space_.dim())
    throw Error(ErrorCode::DimensionMismatch, "operator does not match the space dimension");

  const RVec& w = space_.coordinate_weights();
  sqrt_w_.resize(w.size());
  inv_sqrt_w_.resize(w.size());
  for (size_t i = 0; i < w.size(); ++i) {
    sqrt_w_[i] = std::sqrt(w[i]);
    inv_sqrt_w_[i] = 1.0 / sqrt_w_[i];
  }

  sym_ = op_;
  for (int i = 0; i < sym_.rows(); ++i)
    for (int j = 0; j < sym_.cols(); ++j)
      sym_(i, j) *= sqrt_w_[static_cast<size_t>(i)] * inv_sqrt_w_[static_cast<size_t>(j)];

  if (!sym_.is_hermitian(1e-10 * (1.0 + sym_.max_abs_entry())))
    throw Error(ErrorCode::NonHermitianInput,
                "operator is not self-adjoint for the weighted inner product");
  eig_ = hermitian_eig(sym_);
}

cplx OperatorForm::form(const CVec& u, const CVec& v) const {
  return space_.inner(op_.apply(u), v);
}

double OperatorForm::form_real(const RVec& u, const RVec& v) const {
  return form(to_cvec(u), to_cvec(v)).real();
}

Matrix OperatorForm::from_symmetrized(const Matrix& s) const {
  Matrix out = s;
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j)
      out(i, j) *= inv_sqrt_w_[static_cast<size_t>(i)] * sqrt_w_[static_cast<size_t>(j)];
  return out;
}

Matrix OperatorForm::semigroup(double t) const {
  return from_symmetrized(semigroup_symmetrized(t));
}

Matrix OperatorForm::resolvent(double alpha) const {
  return from_symmetrized(resolvent_symmetrized(alpha));
}

Matrix OperatorForm::semigroup_symmetrized(double t) const {
  if (t < 0.0) throw Error(ErrorCode::InvalidParameters, "semigroup time must be nonnegative");
  return eig_.apply_function([t](double x) { return std::exp(-t * x); });
}

Matrix OperatorForm::resolvent_symmetrized(double alpha) const {
  const double lambda_min = min_eigenvalue();
  const double radius = std::max(std::abs(eig_.eigenvalues.front()), std::abs(eig_.eigenvalues.back()));
  if (lambda_min + alpha <= 1e-12 * (1.0 + radius + std::abs(alpha)))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must exceed the lower bound of the operator");
  return eig_.apply_function([alpha](double x) { return 1.0 / (x + alpha); });
}

OperatorForm OperatorForm::zero(const Space& s) { return OperatorForm(s, Matrix(s.dim(), s.dim())); }

OperatorForm OperatorForm::identity_op(const Space& s) {
  return OperatorForm(s, Matrix::identity(s.dim()));
}

OperatorForm operator_from_form_gram(const Space& space, const Matrix& gram) {
  // a(u,v) = <G u, v>_unweighted = <m^{-1} G u, v>_m
  Matrix a = gram;
  const RVec& w = space.coordinate_weights();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) /= w[static_cast<size_t>(i)];
  return OperatorForm(space, std::move(a));
}

}  // namespace dominion
