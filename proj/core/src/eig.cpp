#include "dominion/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dominion {

Matrix EigenDecomposition::apply_function(const std::function<double(double)>& f) const {
  const int n = basis.rows();
  Matrix scaled = basis;  // columns scaled by f(lambda_j)
  for (int j = 0; j < n; ++j) {
    const cplx fj = f(eigenvalues[static_cast<size_t>(j)]);
    for (int i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  Matrix out = scaled * basis.adjoint();
  // symmetrize away rounding noise; the exact result is Hermitian
  for (int i = 0; i < n; ++i) {
    out(i, i) = out(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

namespace {

double offdiag_frobenius(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& input) {
  if (input.rows() != input.cols())
    throw Error(ErrorCode::NonHermitianInput, "matrix is not square");
  if (!input.is_hermitian())
    throw Error(ErrorCode::NonHermitianInput, "symmetry check failed beyond tolerance");

  const int n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);
  // force exactly real diagonal before the sweeps
  for (int i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double norm_f = a.frobenius_norm();
  const double stop = 1e-12 * norm_f;
  constexpr int kMaxSweeps = 64;

  if (norm_f > 0.0) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (offdiag_frobenius(a) <= stop) break;
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const cplx apq = a(p, q);
          const double mag = std::abs(apq);
          if (mag <= 1e-18 * norm_f) {
            continue;
          }
          // absorb the phase, then a real Jacobi rotation on [[app,|apq|],[|apq|,aqq]]
          const cplx phase = apq / mag;  // e^{i arg apq}
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const double tau = (aqq - app) / (2.0 * mag);
          const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double cs = 1.0 / std::sqrt(1.0 + t * t);
          const double sn = t * cs;

          // U = diag(1, conj(phase)) * [[cs, sn], [-sn, cs]] acting on columns (p,q)
          const cplx u00 = cs;
          const cplx u01 = sn;
          const cplx u10 = -sn * std::conj(phase);
          const cplx u11 = cs * std::conj(phase);

          for (int i = 0; i < n; ++i) {
            const cplx aip = a(i, p), aiq = a(i, q);
            a(i, p) = aip * u00 + aiq * u10;
            a(i, q) = aip * u01 + aiq * u11;
          }
          for (int j = 0; j < n; ++j) {
            const cplx apj = a(p, j), aqj = a(q, j);
            a(p, j) = std::conj(u00) * apj + std::conj(u10) * aqj;
            a(q, j) = std::conj(u01) * apj + std::conj(u11) * aqj;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = a(p, p).real();
          a(q, q) = a(q, q).real();

          for (int i = 0; i < n; ++i) {
            const cplx vip = v(i, p), viq = v(i, q);
            v(i, p) = vip * u00 + viq * u10;
            v(i, q) = vip * u01 + viq * u11;
          }
        }
      }
    }
  }

  EigenDecomposition dec;
  dec.eigenvalues.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) dec.eigenvalues[static_cast<size_t>(i)] = a(i, i).real();

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return dec.eigenvalues[static_cast<size_t>(i)] < dec.eigenvalues[static_cast<size_t>(j)];
  });

  RVec sorted(static_cast<size_t>(n));
  Matrix basis(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<size_t>(j)];
    sorted[static_cast<size_t>(j)] = dec.eigenvalues[static_cast<size_t>(src)];
    // fix the column phase: largest-modulus component becomes real positive
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double m = std::abs(v(i, src));
      if (m > best) {
        best = m;
        imax = i;
      }
    }
    cplx rot = 1.0;
    if (best > 0.0) rot = std::abs(v(imax, src)) / v(imax, src);
    for (int i = 0; i < n; ++i) basis(i, j) = v(i, src) * rot;
  }
  dec.eigenvalues = std::move(sorted);
  dec.basis = std::move(basis);
  return dec;
}

Matrix semigroup_apply(const Matrix& a, double t) {
  if (t < 0.0) throw Error(ErrorCode::InvalidParameters, "semigroup time must be nonnegative");
  const auto dec = hermitian_eig(a);
  return dec.apply_function([t](double x) { return std::exp(-t * x); });
}

Matrix resolvent_apply(const Matrix& a, double alpha) {
  const auto dec = hermitian_eig(a);
  const double lambda_min = dec.eigenvalues.empty() ? 0.0 : dec.eigenvalues.front();
  const double radius =
      dec.eigenvalues.empty() ? 0.0 : std::max(std::abs(dec.eigenvalues.front()), std::abs(dec.eigenvalues.back()));
  if (lambda_min + alpha <= 1e-12 * (1.0 + radius + std::abs(alpha)))
    throw Error(ErrorCode::AlphaOutOfRange, "A + alpha is not positive definite");
  return dec.apply_function([alpha](double x) { return 1.0 / (x + alpha); });
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  const Matrix gram = m.adjoint() * m;
  const auto dec = hermitian_eig(gram);
  const double top = dec.eigenvalues.back();
  return std::sqrt(std::max(0.0, top));
}

CVec top_right_singular_vector(const Matrix& m) {
  CVec v(static_cast<size_t>(m.cols()));
  if (m.cols() == 0) return v;
  if (m.frobenius_norm() == 0.0) {
    v[0] = 1.0;
    return v;
  }
  const Matrix gram = m.adjoint() * m;
  const auto dec = hermitian_eig(gram);
  const int last = m.cols() - 1;
  for (int i = 0; i < m.cols(); ++i) v[static_cast<size_t>(i)] = dec.basis(i, last);
  return v;
}

}  // namespace dominion
