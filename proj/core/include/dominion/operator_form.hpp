#pragma once

#include "dominion/eig.hpp"
#include "dominion/space.hpp"

namespace dominion {

// Self-adjoint operator on a weighted (possibly fibered) space together with
// its quadratic form a(u,v) = <Au, v>. The matrix is stored in weighted
// coordinates and symmetrized through u -> m^{1/2} u before any spectral
// work, so the eigensolver always sees a genuinely Hermitian matrix.
class OperatorForm {
public:
  OperatorForm(Space space, Matrix op_weighted);

  const Space& space() const { return space_; }
  const Matrix& matrix() const { return op_; }
  int dim() const { return space_.dim(); }

  // form value a(u, v) = <Au, v>; a(u,u) is real
  cplx form(const CVec& u, const CVec& v) const;
  double form_quadratic(const CVec& u) const { return form(u, u).real(); }
  double form_real(const RVec& u, const RVec& v) const;

  CVec apply(const CVec& u) const { return op_.apply(u); }

  // e^{-tA} and (A + alpha)^{-1} in weighted coordinates
  Matrix semigroup(double t) const;
  Matrix resolvent(double alpha) const;

  // the same functions in symmetrized coordinates (m^{1/2} . m^{-1/2});
  // operator norms taken there agree with the weighted geometry
  Matrix semigroup_symmetrized(double t) const;
  Matrix resolvent_symmetrized(double alpha) const;

  double min_eigenvalue() const { return eig_.eigenvalues.front(); }
  // the form satisfies a(u) >= -lambda ||u||^2 with lambda = -min eigenvalue
  double lower_bound_lambda() const { return -min_eigenvalue(); }

  const EigenDecomposition& symmetrized_eig() const { return eig_; }

  static OperatorForm zero(const Space& s);
  static OperatorForm identity_op(const Space& s);

private:
  Space space_;
  Matrix op_;        // weighted coordinates
  Matrix sym_;       // m^{1/2} A m^{-1/2}, Hermitian
  EigenDecomposition eig_;
  RVec sqrt_w_, inv_sqrt_w_;

  Matrix from_symmetrized(const Matrix& s) const;  // m^{-1/2} S m^{1/2}
};

// operator built from its quadratic form coefficients: given the Gram matrix
// G with a(u,v) = sum_ij G_ij u_j conj(v_i) (unweighted), returns A with
// <Au,v>_m = a(u,v)
OperatorForm operator_from_form_gram(const Space& space, const Matrix& gram);

}  // namespace dominion
