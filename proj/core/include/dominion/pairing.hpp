#pragma once

#include <optional>

#include "dominion/cone.hpp"
#include "dominion/rng.hpp"
#include "dominion/space.hpp"

namespace dominion {

enum class PairingKind { BundleModulus, NormPairing, LatticeAbs, Rearrangement };

const char* pairing_kind_name(PairingKind k);

// Modulus-type map S from a (possibly complex, fibered) domain space H into
// the positive cone of a real ordered space K:
//   |<f1,f2>| <= <S(f1), S(f2)> with equality at f1 = f2.
// All variants except the rearrangement also construct the "g sgn(f1)"
// element of the pairing property.
class Pairing {
public:
  static Pairing bundle_modulus(Space domain, CVec zeta = {});
  static Pairing norm_pairing(Space domain, CVec zeta = {});
  static Pairing lattice_abs(Space space);
  static Pairing rearrangement(Space domain, Space target);

  PairingKind kind() const { return kind_; }
  const Space& domain() const { return domain_; }
  const Space& target() const { return cone_.ambient(); }
  const Cone& target_cone() const { return cone_; }
  const CVec& zeta() const { return zeta_; }
  bool pair_available() const { return kind_ != PairingKind::Rearrangement; }

  RVec abs_map(const CVec& f) const;

  // the element f2 with S(f2) = g that is paired with f1; throws
  // PairingUnavailable for the rearrangement and ConeViolation if g is not
  // in the target cone
  CVec pair_with(const CVec& f1, const RVec& g) const;

  // <f1,f2> real and equal to <S f1, S f2> within tol * (1 + |f1||f2|)
  bool is_paired(const CVec& f1, const CVec& f2, double tol = 1e-9) const;
  // fiberwise test <f1(x),f2(x)>_x = |f1(x)|_x |f2(x)|_x (bundle and lattice
  // variants); must agree with the global test
  bool is_paired_pointwise(const CVec& f1, const CVec& f2, double tol = 1e-9) const;

  // Gaussian f1 (optionally with zeroed fibers) and g in K+, either
  // unconstrained or clipped below S(f1); returns (f1, g, f2 = pair(f1,g)).
  struct PairedSample {
    CVec f1;
    RVec g;
    CVec f2;
  };
  PairedSample sample_paired(Rng& rng, bool dominated_g, double zero_fiber_prob = 0.25) const;

private:
  Pairing(PairingKind kind, Space domain, Cone cone, CVec zeta)
      : kind_(kind), domain_(std::move(domain)), cone_(std::move(cone)), zeta_(std::move(zeta)) {}

  PairingKind kind_;
  Space domain_;
  Cone cone_;
  CVec zeta_;
};

struct DifferenceLemmaReport {
  bool holds = false;
  double max_deviation = 0.0;  // |S(f1-f2) - (S(f1)-S(f2))| worst entry
  bool paired_after = false;   // f1-f2 paired with f2
};

// S(f1 - f2) = S(f1) - S(f2) for paired f1, f2 with S(f2) <= S(f1).
// PreconditionViolated when the inputs are not paired or the order fails.
DifferenceLemmaReport check_difference_lemma(const Pairing& s, const CVec& f1, const CVec& f2,
                                             double tol = 1e-9);

struct UniquenessReport {
  bool holds = false;
  double max_deviation = 0.0;
  CVec closed_form;
  CVec via_projection;
};

// The paired element with S(f2) = g <= S(f1) is unique: compares the
// closed-form construction against 2*u - f1 where (u, v) is the
// fiberwise cone projection of (f1, g) onto {(u,v) : S(u) <= v}.
UniquenessReport pairing_uniqueness_check(const Pairing& s, const CVec& f1, const RVec& g,
                                          double tol = 1e-8);

}  // namespace dominion
