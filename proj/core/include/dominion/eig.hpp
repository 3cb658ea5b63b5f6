#pragma once

#include <functional>

#include "dominion/matrix.hpp"

namespace dominion {

// Spectral factorization A = basis * diag(eigenvalues) * basis^H with
// eigenvalues ascending and basis unitary.
struct EigenDecomposition {
  RVec eigenvalues;
  Matrix basis;

  Matrix reconstruct() const { return apply_function([](double x) { return x; }); }

  // basis * diag(f(lambda)) * basis^H
  Matrix apply_function(const std::function<double(double)>& f) const;
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
// 1e-12 * ||A||_F. Throws NonHermitianInput when the symmetry check fails.
EigenDecomposition hermitian_eig(const Matrix& a);

// e^{-tA} for Hermitian A, via the eigendecomposition.
Matrix semigroup_apply(const Matrix& a, double t);

// (A + alpha)^{-1}; requires A + alpha positive definite.
Matrix resolvent_apply(const Matrix& a, double alpha);

// Largest singular value of a rectangular complex matrix.
double operator_norm(const Matrix& m);

// Right singular vector for the largest singular value (unit norm). For the
// zero matrix returns the first basis vector.
CVec top_right_singular_vector(const Matrix& m);

}  // namespace dominion
