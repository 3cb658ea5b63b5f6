#pragma once

#include <optional>
#include <string>

#include "dominion/convex_set.hpp"
#include "dominion/forms_checks.hpp"
#include "dominion/graph.hpp"
#include "dominion/pairing.hpp"

namespace dominion {

// Witness data sufficient to re-evaluate the violated inequality.
struct DominationWitness {
  std::string check;  // "semigroup" | "resolvent" | "form"
  double grid_value = 0.0;
  int block_x = -1, block_y = -1;
  CVec f1;
  CVec f2;  // form check only
  double margin = 0.0;
};

struct BlockDominationResult {
  bool holds = true;
  double margin = 0.0;  // min over blocks of Q_xy - opnorm(P_xy)
  int worst_x = -1, worst_y = -1;
  CVec worst_direction;  // top singular direction of the worst block
};

// Exact criterion for domination of a single operator pair through the
// bundle modulus over a finite base: Q nonnegative entrywise and
// opnorm(P_xy) <= Q_xy for every block. Shapes: P acts on the fibered space
// h, Q on the scalar space k over the same base.
BlockDominationResult exact_bundle_domination(const Matrix& p, const Space& h, const Matrix& q,
                                              const Space& k, double tol = 1e-9);

struct GridCheckResult {
  bool holds = true;
  bool exact = true;  // blockwise criterion (false: sampled fallback)
  double margin = 0.0;
  std::vector<double> per_grid;
  std::optional<DominationWitness> witness;
};

// Semigroup domination e^{-tA} by e^{-tB} on the time grid, after verifying
// that e^{-tB} preserves the target cone (PositivityPreconditionFailed).
GridCheckResult check_semigroup_domination(const OperatorForm& a, const OperatorForm& b,
                                           const Pairing& s, const std::vector<double>& t_grid,
                                           double tol = 1e-9);

// Resolvent domination (A+alpha)^{-1} by (B+alpha)^{-1} for alpha above the
// common lower bound.
GridCheckResult check_resolvent_domination(const OperatorForm& a, const OperatorForm& b,
                                           const Pairing& s, const std::vector<double>& alpha_grid,
                                           double tol = 1e-9);

struct FormCheckResult {
  bool holds = true;
  double margin = 0.0;  // min of Re a(f1,f2) - b(S f1, S f2) over samples
  bool ideal_i1_vacuous = true;  // every vector is admissible in finite dimension
  bool ideal_i2_ok = true;       // constructive pairing round-trips
  std::optional<DominationWitness> witness;
};

// Form domination Re a(f1,f2) >= b(S f1, S f2) on paired pairs. Runs a
// deterministic two-point family (singular directions of the off-diagonal
// blocks, Rayleigh directions of the diagonal blocks) before the random
// paired samples, which makes the check exact for generator-level
// violations.
FormCheckResult check_form_domination(const OperatorForm& a, const OperatorForm& b,
                                      const Pairing& s, int samples, uint64_t seed,
                                      double tol = 1e-9);

struct KatoResult {
  bool holds = true;
  double margin = 0.0;  // min of Re<f2, Af> - b(S f, g)
};

// Re <g sgn f, A f> >= b(S f, g): requires semigroup domination (the exact
// check runs first; PreconditionViolated when it fails).
KatoResult kato_check(const OperatorForm& a, const OperatorForm& b, const Pairing& s, int samples,
                      uint64_t seed, double tol = 1e-9);

struct AlgebraReport {
  bool inputs_dominated = true;
  bool combination_holds = true;   // a1 P1 + a2 P2 vs |a1| Q1 + |a2| Q2
  bool q1_preserves_cone = true;
  bool product_holds = true;       // P1 P2 vs Q1 Q2
  double combination_margin = 0.0;
  double product_margin = 0.0;
};

// Closure properties of domination for two dominated pairs on the same
// spaces: linear combinations, positivity of the dominating operator, and
// products.
AlgebraReport algebra_checks(const Matrix& p1, const Matrix& q1, const Matrix& p2,
                             const Matrix& q2, const Space& h, const Space& k, cplx a1, cplx a2,
                             double tol = 1e-9);

struct RunConfig {
  double tol = 1e-9;
  int samples = 500;
  std::vector<double> t_grid = default_t_grid();
  std::optional<std::vector<double>> alpha_grid;  // default: lambda + {0.1, 1, 10}
  uint64_t seed = 0;
};

struct DominationReport {
  bool semigroup = true;
  bool resolvent = true;
  bool form = true;
  bool unanimous = true;
  double semigroup_margin = 0.0;
  double resolvent_margin = 0.0;
  double form_margin = 0.0;
  std::vector<double> t_grid;
  std::vector<double> alpha_grid;
  std::vector<double> semigroup_per_t;
  std::vector<double> resolvent_per_alpha;
  std::optional<DominationWitness> witness;
  RunConfig config;
};

// Runs all three characterizations and reports whether the verdicts agree;
// disagreement is a report outcome, not an exception. A small-time probe
// t = 1e-3 is always added to the semigroup grid.
DominationReport verify_theorem_equivalence(const OperatorForm& a, const OperatorForm& b,
                                            const Pairing& s, const RunConfig& config);

// Re-evaluates the violated inequality carried by the witness and returns
// the margin (negative when the witness is genuine).
double reevaluate_witness(const DominationReport& report, const OperatorForm& a,
                          const OperatorForm& b, const Pairing& s);

// Parallel instance sweep (worker count capped by DOMINION_THREADS, 0 =
// auto); reports are ordered by instance index regardless of the schedule.
std::vector<DominationReport> sweep_equivalence(const std::vector<MagneticInstance>& instances,
                                                const RunConfig& config);

int thread_cap();

}  // namespace dominion
