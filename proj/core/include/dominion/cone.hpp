#pragma once

#include <optional>
#include <string>

#include "dominion/rng.hpp"
#include "dominion/space.hpp"

namespace dominion {

// h1 in K+, h2 in the dual cone, g = h1 - h2 and <h1,h2> = 0.
struct MoreauPair {
  RVec h1;
  RVec h2;
};

struct LatticeOps {
  RVec join;
  RVec meet;
  RVec abs;
};

// Outcome of a structural probe: either the property held on the whole
// corner + sample budget, or a concrete witness with its separation margin.
struct ProbeResult {
  bool holds = true;
  RVec witness;          // self-dual probe: offending vector
  RVec witness_second;   // isotone probe: the comparison partner (g <= h)
  std::string detail;
  double margin = 0.0;   // distance that certifies the violation
  int trials = 0;
};

// Weighted least-squares fit under a nonincreasing constraint
// (pool-adjacent-violators on the reversed order).
RVec pava_nonincreasing(const RVec& y, const RVec& w);

// Positive cone in a finite-dimensional real Hilbert space. Three variants:
//  - Orthant: entrywise nonnegative vectors of a weighted space,
//  - PsdMatrices: positive semidefinite matrices inside the symmetric
//    matrices with the Hilbert-Schmidt inner product (vectors are row-major
//    n*n arrays),
//  - MonotoneNonneg: nonnegative nonincreasing sequences along the grid
//    order of a weighted space.
class Cone {
public:
  enum class Kind { Orthant, PsdMatrices, MonotoneNonneg };

  static Cone orthant(Space space);
  static Cone psd_matrices(int n);
  static Cone monotone_nonneg(Space space);

  Kind kind() const { return kind_; }
  int ambient_dim() const { return ambient_.dim(); }
  const Space& ambient() const { return ambient_; }
  int psd_n() const { return psd_n_; }
  bool self_dual_variant() const { return kind_ != Kind::MonotoneNonneg; }
  bool isotone_variant() const { return kind_ == Kind::Orthant; }

  double inner(const RVec& g, const RVec& h) const { return ambient_.inner(g, h); }
  double norm(const RVec& g) const { return ambient_.norm(g); }

  bool contains(const RVec& g, double tol = 1e-9) const;
  // signed slack: smallest of the defining inequalities, >= 0 inside
  double membership_margin(const RVec& g) const;

  RVec project(const RVec& g) const;
  RVec dual_project(const RVec& g) const;  // P_{K+^o}(g) = g + P_{K+}(-g)
  bool in_dual(const RVec& g, double tol = 1e-9) const;
  double dual_membership_distance(const RVec& g) const;

  MoreauPair moreau_decompose(const RVec& g) const;

  // cone order g <= h, i.e. h - g in K+
  bool leq(const RVec& g, const RVec& h, double tol = 1e-9) const;

  // Orthant only; ConeNotIsotone otherwise.
  RVec positive_part(const RVec& g) const;
  LatticeOps lattice_ops(const RVec& g, const RVec& h) const;

  ProbeResult probe_self_dual(int samples, uint64_t seed, double tol = 1e-9) const;
  ProbeResult probe_isotone(int samples, uint64_t seed, double tol = 1e-9) const;

  // deterministic corner candidates (basis vectors, all-ones, alternating
  // signs, rank-one and difference patterns); used by the probes before any
  // random sampling
  std::vector<RVec> corner_candidates() const;
  // corner elements that lie in the cone, used to build ordered pairs
  std::vector<RVec> corner_cone_elements() const;

  RVec random_ambient(Rng& rng) const;
  RVec random_member(Rng& rng) const;

private:
  explicit Cone(Kind kind, Space ambient, int psd_n)
      : kind_(kind), ambient_(std::move(ambient)), psd_n_(psd_n) {}

  void require_isotone(const char* op) const;

  Kind kind_;
  Space ambient_;
  int psd_n_ = 0;
};

}  // namespace dominion
