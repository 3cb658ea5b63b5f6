#include "dominion/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dominion/convex_set.hpp"

namespace dominion {

const char* pairing_kind_name(PairingKind k) {
  switch (k) {
    case PairingKind::BundleModulus: return "bundle_modulus";
    case PairingKind::NormPairing: return "norm";
    case PairingKind::LatticeAbs: return "lattice_abs";
    case PairingKind::Rearrangement: return "rearrangement";
  }
  return "?";
}

namespace {

double fiber_norm(const CVec& f, int offset, int len) {
  double s = 0.0;
  for (int k = 0; k < len; ++k) s += std::norm(f[static_cast<size_t>(offset + k)]);
  return std::sqrt(s);
}

CVec default_bundle_zeta(const Space& domain) {
  CVec zeta(static_cast<size_t>(domain.dim()));
  for (int p = 0; p < domain.point_count(); ++p) zeta[static_cast<size_t>(domain.offset(p))] = 1.0;
  return zeta;
}

}  // namespace

Pairing Pairing::bundle_modulus(Space domain, CVec zeta) {
  Space target = Space::scalar(domain.points(), domain.weights());
  if (zeta.empty()) zeta = default_bundle_zeta(domain);
  domain.check_vector(zeta);
  for (int p = 0; p < domain.point_count(); ++p) {
    const double n = fiber_norm(zeta, domain.offset(p), domain.fiber(p));
    if (std::abs(n - 1.0) > 1e-9)
      throw Error(ErrorCode::InvalidParameters, "zeta must have unit fiber norms",
                  "/pairing/zeta/" + domain.points()[static_cast<size_t>(p)]);
  }
  return Pairing(PairingKind::BundleModulus, std::move(domain), Cone::orthant(std::move(target)),
                 std::move(zeta));
}

Pairing Pairing::norm_pairing(Space domain, CVec zeta) {
  Space target = Space::scalar({"*"}, {1.0});
  if (zeta.empty()) {
    zeta.assign(static_cast<size_t>(domain.dim()), cplx{});
    zeta[0] = 1.0 / std::sqrt(domain.coordinate_weights()[0]);
  }
  domain.check_vector(zeta);
  if (std::abs(domain.norm(zeta) - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidParameters, "zeta must have unit norm", "/pairing/zeta");
  return Pairing(PairingKind::NormPairing, std::move(domain), Cone::orthant(std::move(target)),
                 std::move(zeta));
}

Pairing Pairing::lattice_abs(Space space) {
  if (!space.scalar_space())
    throw Error(ErrorCode::InvalidParameters, "lattice absolute value needs a scalar space");
  Space target = space;
  return Pairing(PairingKind::LatticeAbs, std::move(space), Cone::orthant(std::move(target)), {});
}

Pairing Pairing::rearrangement(Space domain, Space target) {
  if (!domain.scalar_space() || !target.scalar_space())
    throw Error(ErrorCode::InvalidParameters, "rearrangement needs scalar spaces");
  if (domain.dim() != target.dim())
    throw Error(ErrorCode::DimensionMismatch, "rearrangement grids must have equal size");
  return Pairing(PairingKind::Rearrangement, std::move(domain), Cone::monotone_nonneg(std::move(target)),
                 {});
}

RVec Pairing::abs_map(const CVec& f) const {
  domain_.check_vector(f);
  switch (kind_) {
    case PairingKind::BundleModulus: {
      RVec g(static_cast<size_t>(domain_.point_count()));
      for (int p = 0; p < domain_.point_count(); ++p)
        g[static_cast<size_t>(p)] = fiber_norm(f, domain_.offset(p), domain_.fiber(p));
      return g;
    }
    case PairingKind::NormPairing:
      return {domain_.norm(f)};
    case PairingKind::LatticeAbs: {
      RVec g(f.size());
      for (size_t i = 0; i < f.size(); ++i) g[i] = std::abs(f[i]);
      return g;
    }
    case PairingKind::Rearrangement: {
      // moduli sorted descending, ties broken by original index, assigned to
      // the grid cells in order
      std::vector<size_t> order(f.size());
      std::iota(order.begin(), order.end(), size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) {
        return std::abs(f[i]) > std::abs(f[j]);
      });
      RVec g(f.size());
      for (size_t cell = 0; cell < order.size(); ++cell) g[cell] = std::abs(f[order[cell]]);
      return g;
    }
  }
  return {};
}

CVec Pairing::pair_with(const CVec& f1, const RVec& g) const {
  domain_.check_vector(f1);
  if (!pair_available())
    throw Error(ErrorCode::PairingUnavailable,
                "the rearrangement is an absolute mapping only; no pairing construction");
  target().check_vector(g);
  if (!cone_.contains(g, 1e-9))
    throw Error(ErrorCode::ConeViolation, "g must lie in the target cone");

  CVec f2(f1.size());
  switch (kind_) {
    case PairingKind::BundleModulus: {
      for (int p = 0; p < domain_.point_count(); ++p) {
        const int off = domain_.offset(p), len = domain_.fiber(p);
        const double n = fiber_norm(f1, off, len);
        const double target_mass = g[static_cast<size_t>(p)];
        if (n > 0.0) {
          const double scale = target_mass / n;
          for (int k = 0; k < len; ++k)
            f2[static_cast<size_t>(off + k)] = scale * f1[static_cast<size_t>(off + k)];
        } else {
          for (int k = 0; k < len; ++k)
            f2[static_cast<size_t>(off + k)] = target_mass * zeta_[static_cast<size_t>(off + k)];
        }
      }
      return f2;
    }
    case PairingKind::NormPairing: {
      const double n = domain_.norm(f1);
      if (n > 0.0) {
        const double scale = g[0] / n;
        for (size_t i = 0; i < f1.size(); ++i) f2[i] = scale * f1[i];
      } else {
        for (size_t i = 0; i < f1.size(); ++i) f2[i] = g[0] * zeta_[i];
      }
      return f2;
    }
    case PairingKind::LatticeAbs: {
      for (size_t i = 0; i < f1.size(); ++i) {
        if (std::abs(f1[i].imag()) > 1e-9 * (1.0 + std::abs(f1[i])))
          throw Error(ErrorCode::PreconditionViolated,
                      "lattice absolute value pairs real vectors only");
        const double sign = f1[i].real() < 0.0 ? -1.0 : 1.0;  // sign(0) := 1
        f2[i] = g[i] * sign;
      }
      return f2;
    }
    case PairingKind::Rearrangement:
      break;
  }
  return f2;
}

bool Pairing::is_paired(const CVec& f1, const CVec& f2, double tol) const {
  const cplx ip = domain_.inner(f1, f2);
  const RVec s1 = abs_map(f1), s2 = abs_map(f2);
  const double target_ip = target().inner(s1, s2);
  const double scale = 1.0 + domain_.norm(f1) * domain_.norm(f2);
  return std::abs(ip.imag()) <= tol * scale && std::abs(ip.real() - target_ip) <= tol * scale;
}

bool Pairing::is_paired_pointwise(const CVec& f1, const CVec& f2, double tol) const {
  if (kind_ != PairingKind::BundleModulus && kind_ != PairingKind::LatticeAbs)
    throw Error(ErrorCode::PreconditionViolated, "pointwise pairing test needs a fibered modulus");
  for (int p = 0; p < domain_.point_count(); ++p) {
    const int off = domain_.offset(p), len = domain_.fiber(p);
    cplx ip{};
    for (int k = 0; k < len; ++k)
      ip += f1[static_cast<size_t>(off + k)] * std::conj(f2[static_cast<size_t>(off + k)]);
    const double n1 = fiber_norm(f1, off, len), n2 = fiber_norm(f2, off, len);
    if (std::abs(ip - cplx(n1 * n2, 0.0)) > tol * (1.0 + n1 * n2)) return false;
  }
  return true;
}

Pairing::PairedSample Pairing::sample_paired(Rng& rng, bool dominated_g, double zero_fiber_prob) const {
  PairedSample s;
  s.f1.assign(static_cast<size_t>(domain_.dim()), cplx{});
  const bool realdom = (kind_ == PairingKind::LatticeAbs);
  for (int p = 0; p < domain_.point_count(); ++p) {
    if (zero_fiber_prob > 0.0 && rng.bernoulli(zero_fiber_prob)) continue;
    const int off = domain_.offset(p), len = domain_.fiber(p);
    for (int k = 0; k < len; ++k)
      s.f1[static_cast<size_t>(off + k)] = realdom ? cplx(rng.gaussian(), 0.0) : rng.cgaussian();
  }
  const RVec sf1 = abs_map(s.f1);
  s.g.resize(sf1.size());
  for (size_t i = 0; i < sf1.size(); ++i) {
    const double u = std::abs(rng.gaussian());
    s.g[i] = dominated_g ? std::min(u, sf1[i]) : u;
  }
  s.f2 = pair_with(s.f1, s.g);
  return s;
}

DifferenceLemmaReport check_difference_lemma(const Pairing& s, const CVec& f1, const CVec& f2,
                                             double tol) {
  if (!s.is_paired(f1, f2, 1e-7))
    throw Error(ErrorCode::PreconditionViolated, "inputs are not paired");
  const RVec s1 = s.abs_map(f1), s2 = s.abs_map(f2);
  if (!s.target_cone().leq(s2, s1, 1e-7))
    throw Error(ErrorCode::PreconditionViolated, "S(f2) <= S(f1) fails");

  CVec diff(f1.size());
  for (size_t i = 0; i < f1.size(); ++i) diff[i] = f1[i] - f2[i];
  const RVec lhs = s.abs_map(diff);

  DifferenceLemmaReport rep;
  for (size_t i = 0; i < lhs.size(); ++i)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs[i] - (s1[i] - s2[i])));
  rep.paired_after = s.is_paired(diff, f2, tol);
  rep.holds = rep.max_deviation <= tol * (1.0 + s.target_cone().norm(s1)) && rep.paired_after;
  return rep;
}

UniquenessReport pairing_uniqueness_check(const Pairing& s, const CVec& f1, const RVec& g,
                                          double tol) {
  if (!s.target_cone().contains(g, 1e-9))
    throw Error(ErrorCode::PreconditionViolated, "g must lie in the target cone");
  const RVec sf1 = s.abs_map(f1);
  if (!s.target_cone().leq(g, sf1, 1e-9))
    throw Error(ErrorCode::PreconditionViolated, "g <= S(f1) fails");

  UniquenessReport rep;
  rep.closed_form = s.pair_with(f1, g);

  // independent route: fiberwise projection onto {(u,v): S(u) <= v} applied
  // to (f1, g), then f2 = 2u - f1
  const auto proj = project_C_reference(s, f1, g);
  rep.via_projection.resize(f1.size());
  for (size_t i = 0; i < f1.size(); ++i) rep.via_projection[i] = 2.0 * proj.u[i] - f1[i];

  for (size_t i = 0; i < f1.size(); ++i)
    rep.max_deviation =
        std::max(rep.max_deviation, std::abs(rep.closed_form[i] - rep.via_projection[i]));
  rep.holds = rep.max_deviation <= tol * (1.0 + s.domain().norm(f1));
  return rep;
}

}  // namespace dominion
