#pragma once

#include <optional>

#include "dominion/operator_form.hpp"
#include "dominion/pairing.hpp"

namespace dominion {

struct CPoint {
  CVec u;
  RVec v;
};

// The closed convex set C = {(u,v) in H (+) K : v - S(u) in K+^o} attached
// to an absolute mapping S.
class ConvexSetC {
public:
  explicit ConvexSetC(Pairing s) : s_(std::move(s)) {}

  const Pairing& pairing() const { return s_; }

  bool member(const CVec& u, const RVec& v, double tol = 1e-9) const;
  // signed distance proxy: dual-membership distance of v - S(u), negated
  double membership_defect(const CVec& u, const RVec& v) const;

  CPoint random_member(Rng& rng) const;

private:
  Pairing s_;
};

enum class CBranch { FormulaC, FormulaD, Auto };

// Projection onto C through the two closed forms:
//   FormulaC: P(f1,g) = 1/2 (f1 + f2, S(f1) + g)  for g in K+, g <= S(f1),
//             f2 the paired element with S(f2) = g;
//   FormulaD: P(f1,g) = 1/2 (f2, (S(f1) v g + g)_+) with
//             S(f2) = (S(f1) ^ g + S(f1))_+, orthant targets only.
CPoint project_C(const ConvexSetC& c, const CVec& f1, const RVec& g, CBranch branch = CBranch::Auto);

// Independent reference: for orthant targets C decomposes fiberwise into
// second-order cones {(w, s) : |w| <= s}, and the projection has the
// classical closed form per fiber. Never uses the pairing construction.
CPoint project_C_reference(const Pairing& s, const CVec& f1, const RVec& g);

struct InvarianceReport {
  bool holds = true;
  double worst_margin = 0.0;  // min over samples of the membership slack
  double worst_t = 0.0;
  std::optional<CPoint> witness;
};

// Samples (u,v) in C and checks (e^{-tA}u, e^{-tB}v) stays in C on the grid.
InvarianceReport check_C_invariance(const ConvexSetC& c, const OperatorForm& a,
                                    const OperatorForm& b, const std::vector<double>& t_grid,
                                    int samples, uint64_t seed, double tol = 1e-9);

}  // namespace dominion
