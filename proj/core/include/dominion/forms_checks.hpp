#pragma once

#include <optional>

#include "dominion/cone.hpp"
#include "dominion/convex_set.hpp"
#include "dominion/operator_form.hpp"

namespace dominion {

struct BdReport {
  bool holds = true;
  double max_value = 0.0;  // largest b(h1, h2) over the probe set
  std::optional<RVec> witness;
};

// First criterion for positivity: b(P_{K+}(g), P_{K+^o}(-g)) <= 0 for all g.
// A deterministic corner suite (basis differences catch every off-diagonal
// sign defect on the orthant) runs before the random samples.
BdReport check_first_bd(const OperatorForm& f, const Cone& cone, int samples, uint64_t seed,
                        double tol = 1e-9);

struct PositivityWitness {
  RVec g;
  double t = 0.0;
  double margin = 0.0;
};

struct PositivityReport {
  bool preserving = true;             // final verdict
  bool sampled_verdict = true;
  std::optional<bool> structural_verdict;  // orthant only; overrides sampling
  bool agree = true;
  double worst_margin = 0.0;
  std::optional<PositivityWitness> witness;
};

// e^{-tF} K+ subset of K+ on the time grid, sampled; on the orthant the exact
// structural test (all off-diagonal entries <= 0 in weighted coordinates)
// runs as well and its verdict wins.
PositivityReport check_positivity_preserving(const OperatorForm& f, const Cone& cone,
                                             const std::vector<double>& t_grid, int samples,
                                             uint64_t seed, double tol = 1e-9);

struct OuhabazReport {
  bool semigroup_invariant = true;
  bool resolvent_invariant = true;
  bool form_condition = true;
  bool consistent = true;
  double semigroup_margin = 0.0;
  double resolvent_margin = 0.0;
  double form_margin = 0.0;
};

// The three invariance conditions for a closed convex set under a semigroup:
// (i) e^{-tT} C in C, (ii) alpha (T+alpha)^{-1} C in C, (iii) the projection
// condition Re q(Pu, u - Pu) >= 0. Verdicts must coincide.
OuhabazReport ouhabaz_consistency(const Cone& cone, const OperatorForm& f,
                                  const std::vector<double>& t_grid,
                                  const std::vector<double>& alpha_grid, int samples,
                                  uint64_t seed, double tol = 1e-9);

// Same three conditions for the coupled set C in H (+) K under
// W_t = e^{-tA} (+) e^{-tB}; the projection is the closed-form P_C.
OuhabazReport ouhabaz_consistency(const ConvexSetC& c, const OperatorForm& a,
                                  const OperatorForm& b, const std::vector<double>& t_grid,
                                  const std::vector<double>& alpha_grid, int samples,
                                  uint64_t seed, double tol = 1e-9);

struct InequalityReport {
  bool holds = true;
  double worst_margin = 0.0;
};

// b_alpha(g ^ h), b_alpha(g v h) <= b_alpha(g) + b_alpha(h) at
// alpha = lambda(F); requires the first criterion to hold.
InequalityReport sublattice_inequality_check(const OperatorForm& f, const Cone& cone, int samples,
                                             uint64_t seed, double tol = 1e-9);

// (b (+) b)(pi(h,g), (1-pi)(h,g)) >= 0 with
// pi(h,g) = 1/2 ((h ^ g + h)_+, (h v g + g)_+), h in K+.
InequalityReport pi_map_check(const OperatorForm& f, const Cone& cone, int samples, uint64_t seed,
                              double tol = 1e-9);

// default grids
std::vector<double> default_t_grid();
std::vector<double> default_alpha_grid(double lambda);

}  // namespace dominion
