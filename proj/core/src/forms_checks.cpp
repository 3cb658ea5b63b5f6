#include "dominion/forms_checks.hpp"

#include <algorithm>
#include <cmath>

namespace dominion {

std::vector<double> default_t_grid() { return {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}; }

std::vector<double> default_alpha_grid(double lambda) {
  // the printed resolvent condition carries the factor alpha, so the grid is
  // floored at 0 to keep that factor nonnegative when the operator happens to
  // be strictly positive
  const double base = std::max(lambda, 0.0);
  return {base + 0.1, base + 1.0, base + 10.0};
}

namespace {

void check_cone_space(const OperatorForm& f, const Cone& cone) {
  if (f.dim() != cone.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "operator does not act on the cone's ambient space");
}

std::vector<RVec> bd_probe_set(const Cone& cone, int samples, uint64_t seed) {
  std::vector<RVec> probes = cone.corner_candidates();
  const int d = cone.ambient_dim();
  // basis differences e_x - e_y
  if (cone.kind() != Cone::Kind::PsdMatrices) {
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        if (x != y) {
          RVec g(static_cast<size_t>(d), 0.0);
          g[static_cast<size_t>(x)] = 1.0;
          g[static_cast<size_t>(y)] = -1.0;
          probes.push_back(std::move(g));
        }
  }
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    probes.push_back(cone.random_ambient(sub));
  }
  return probes;
}

}  // namespace

BdReport check_first_bd(const OperatorForm& f, const Cone& cone, int samples, uint64_t seed,
                        double tol) {
  check_cone_space(f, cone);
  BdReport rep;
  bool first = true;
  for (auto& g : bd_probe_set(cone, samples, seed)) {
    const double n = cone.norm(g);
    if (n == 0.0) continue;
    for (auto& x : g) x /= n;
    const MoreauPair mp = cone.moreau_decompose(g);
    const double value = f.form_real(mp.h1, mp.h2);
    if (first || value > rep.max_value) {
      rep.max_value = value;
      first = false;
    }
    if (value > tol && !rep.witness) {
      rep.holds = false;
      rep.witness = g;
    }
  }
  return rep;
}

PositivityReport check_positivity_preserving(const OperatorForm& f, const Cone& cone,
                                             const std::vector<double>& t_grid, int samples,
                                             uint64_t seed, double tol) {
  check_cone_space(f, cone);
  PositivityReport rep;

  if (cone.kind() == Cone::Kind::Orthant) {
    // e^{-tB} >= 0 entrywise for all t >= 0 iff off-diagonal entries of B
    // are <= 0 (weighted coordinates)
    bool ok = true;
    for (int i = 0; i < f.dim() && ok; ++i)
      for (int j = 0; j < f.dim(); ++j)
        if (i != j && f.matrix()(i, j).real() > tol) {
          ok = false;
          break;
        }
    rep.structural_verdict = ok;
  }

  std::vector<double> grid = t_grid;
  // an adaptive small time catches sign defects of the generator directly
  grid.push_back(0.01 / (1.0 + f.matrix().max_abs_entry()));

  bool first = true;
  Rng rng(seed);
  for (double t : grid) {
    const Matrix et = f.semigroup(t);
    std::vector<RVec> members;
    const int d = cone.ambient_dim();
    if (cone.kind() != Cone::Kind::PsdMatrices) {
      for (int y = 0; y < d; ++y) {
        RVec e(static_cast<size_t>(d), 0.0);
        e[static_cast<size_t>(y)] = 1.0;
        if (cone.contains(e, 0.0)) members.push_back(std::move(e));
      }
    }
    for (const auto& c : cone.corner_cone_elements()) members.push_back(c);
    for (int i = 0; i < samples; ++i) {
      Rng sub = rng.substream(static_cast<uint64_t>(i));
      members.push_back(cone.random_member(sub));
    }
    for (auto& g : members) {
      const double n = cone.norm(g);
      if (n == 0.0) continue;
      for (auto& x : g) x /= n;
      const RVec moved = re_part(et.apply(to_cvec(g)));
      const double margin = cone.membership_margin(moved);
      if (first || margin < rep.worst_margin) {
        rep.worst_margin = margin;
        first = false;
      }
      if (margin < -tol * (1.0 + cone.norm(moved)) && !rep.witness) {
        rep.sampled_verdict = false;
        rep.witness = PositivityWitness{g, t, margin};
      }
    }
  }

  if (rep.structural_verdict) {
    rep.agree = (*rep.structural_verdict == rep.sampled_verdict);
    rep.preserving = *rep.structural_verdict;  // the exact test wins
  } else {
    rep.preserving = rep.sampled_verdict;
  }
  return rep;
}

OuhabazReport ouhabaz_consistency(const Cone& cone, const OperatorForm& f,
                                  const std::vector<double>& t_grid,
                                  const std::vector<double>& alpha_grid, int samples,
                                  uint64_t seed, double tol) {
  check_cone_space(f, cone);
  OuhabazReport rep;
  Rng rng(seed);

  std::vector<RVec> members = cone.corner_cone_elements();
  std::vector<RVec> ambient = cone.corner_candidates();
  {
    const int d = cone.ambient_dim();
    if (cone.kind() != Cone::Kind::PsdMatrices)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
          if (x != y) {
            RVec g(static_cast<size_t>(d), 0.0);
            g[static_cast<size_t>(x)] = 1.0;
            g[static_cast<size_t>(y)] = -1.0;
            ambient.push_back(std::move(g));
          }
    for (int i = 0; i < samples; ++i) {
      Rng sub = rng.substream(static_cast<uint64_t>(i));
      members.push_back(cone.random_member(sub));
      ambient.push_back(cone.random_ambient(sub));
    }
  }

  bool first_semi = true;
  for (double t : t_grid) {
    const Matrix et = f.semigroup(t);
    for (const auto& g : members) {
      const double n = cone.norm(g);
      if (n == 0.0) continue;
      const RVec moved = re_part(et.apply(to_cvec(g)));
      const double margin = cone.membership_margin(moved) / n;
      if (first_semi || margin < rep.semigroup_margin) {
        rep.semigroup_margin = margin;
        first_semi = false;
      }
    }
  }
  rep.semigroup_invariant = rep.semigroup_margin >= -tol;

  const double lambda = f.lower_bound_lambda();
  bool first_res = true;
  for (double alpha : alpha_grid) {
    if (alpha <= lambda)
      throw Error(ErrorCode::AlphaOutOfRange, "alpha grid entry below the lower bound");
    const Matrix res = f.resolvent(alpha);
    for (const auto& g : members) {
      const double n = cone.norm(g);
      if (n == 0.0) continue;
      RVec moved = re_part(res.apply(to_cvec(g)));
      for (auto& x : moved) x *= alpha;  // the factor is kept as printed
      const double margin = cone.membership_margin(moved) / n;
      if (first_res || margin < rep.resolvent_margin) {
        rep.resolvent_margin = margin;
        first_res = false;
      }
    }
  }
  rep.resolvent_invariant = rep.resolvent_margin >= -tol;

  bool first_form = true;
  for (const auto& u : ambient) {
    const double n = cone.norm(u);
    if (n == 0.0) continue;
    RVec un(u);
    for (auto& x : un) x /= n;
    const RVec pu = cone.project(un);
    RVec rest(un.size());
    for (size_t i = 0; i < un.size(); ++i) rest[i] = un[i] - pu[i];
    const double value = f.form_real(pu, rest);
    if (first_form || value < rep.form_margin) {
      rep.form_margin = value;
      first_form = false;
    }
  }
  rep.form_condition = rep.form_margin >= -tol;

  rep.consistent = (rep.semigroup_invariant == rep.resolvent_invariant) &&
                   (rep.resolvent_invariant == rep.form_condition);
  return rep;
}

OuhabazReport ouhabaz_consistency(const ConvexSetC& c, const OperatorForm& a,
                                  const OperatorForm& b, const std::vector<double>& t_grid,
                                  const std::vector<double>& alpha_grid, int samples,
                                  uint64_t seed, double tol) {
  OuhabazReport rep;
  Rng rng(seed);
  std::vector<CPoint> members;
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    members.push_back(c.random_member(sub));
  }

  bool first = true;
  for (double t : t_grid) {
    const Matrix pt = a.semigroup(t);
    const Matrix qt = b.semigroup(t);
    for (const auto& m : members) {
      const double defect = c.membership_defect(pt.apply(m.u), re_part(qt.apply(to_cvec(m.v))));
      if (first || defect < rep.semigroup_margin) {
        rep.semigroup_margin = defect;
        first = false;
      }
    }
  }
  rep.semigroup_invariant = rep.semigroup_margin >= -tol;

  const double lambda = std::max(a.lower_bound_lambda(), b.lower_bound_lambda());
  bool first_res = true;
  for (double alpha : alpha_grid) {
    if (alpha <= lambda)
      throw Error(ErrorCode::AlphaOutOfRange, "alpha grid entry below the lower bound");
    const Matrix ra = a.resolvent(alpha);
    const Matrix rb = b.resolvent(alpha);
    for (const auto& m : members) {
      CVec u = ra.apply(m.u);
      RVec v = re_part(rb.apply(to_cvec(m.v)));
      for (auto& x : u) x *= alpha;
      for (auto& x : v) x *= alpha;
      const double defect = c.membership_defect(u, v);
      if (first_res || defect < rep.resolvent_margin) {
        rep.resolvent_margin = defect;
        first_res = false;
      }
    }
  }
  rep.resolvent_invariant = rep.resolvent_margin >= -tol;

  // Re tau(P(f,g), (f,g) - P(f,g)) with tau = a (+) b and P the closed-form
  // projection onto C
  bool first_form = true;
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(0xC0FFEEULL + static_cast<uint64_t>(i));
    CVec f1 = sub.cgaussian_vec(a.dim());
    if (c.pairing().kind() == PairingKind::LatticeAbs)
      for (auto& x : f1) x = cplx(x.real() * 1.4142135623730951, 0.0);
    const RVec g = sub.gaussian_vec(b.dim());
    const CPoint p = project_C(c, f1, g, CBranch::FormulaD);
    CVec du(f1.size());
    for (size_t k = 0; k < f1.size(); ++k) du[k] = f1[k] - p.u[k];
    RVec dv(g.size());
    for (size_t k = 0; k < g.size(); ++k) dv[k] = g[k] - p.v[k];
    const double value = a.form(p.u, du).real() + b.form_real(p.v, dv);
    const double scale = 1.0 + a.space().norm(f1) + b.space().norm(g);
    const double margin = value / scale;
    if (first_form || margin < rep.form_margin) {
      rep.form_margin = margin;
      first_form = false;
    }
  }
  rep.form_condition = rep.form_margin >= -tol;

  rep.consistent = (rep.semigroup_invariant == rep.resolvent_invariant) &&
                   (rep.resolvent_invariant == rep.form_condition);
  return rep;
}

InequalityReport sublattice_inequality_check(const OperatorForm& f, const Cone& cone, int samples,
                                             uint64_t seed, double tol) {
  if (cone.kind() != Cone::Kind::Orthant)
    throw Error(ErrorCode::ConeNotIsotone, "lattice inequalities need the orthant");
  check_cone_space(f, cone);
  {
    const BdReport bd = check_first_bd(f, cone, std::max(50, samples / 4), seed ^ 0x5eedULL);
    if (!bd.holds)
      throw Error(ErrorCode::PreconditionViolated, "the form fails the first positivity criterion");
  }

  const double alpha = f.lower_bound_lambda();
  auto b_alpha = [&](const RVec& u, const RVec& v) {
    return f.form_real(u, v) + alpha * cone.ambient().inner(u, v);
  };

  InequalityReport rep;
  Rng rng(seed);
  bool first = true;
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    const RVec g = sub.gaussian_vec(f.dim());
    const RVec h = sub.gaussian_vec(f.dim());
    const LatticeOps ops = cone.lattice_ops(g, h);
    const double rhs = b_alpha(g, g) + b_alpha(h, h);
    const double scale = 1.0 + std::abs(rhs);
    const double m1 = (rhs - b_alpha(ops.meet, ops.meet)) / scale;
    const double m2 = (rhs - b_alpha(ops.join, ops.join)) / scale;
    const double margin = std::min(m1, m2);
    if (first || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      first = false;
    }
  }
  rep.holds = rep.worst_margin >= -tol;
  return rep;
}

InequalityReport pi_map_check(const OperatorForm& f, const Cone& cone, int samples, uint64_t seed,
                              double tol) {
  if (cone.kind() != Cone::Kind::Orthant)
    throw Error(ErrorCode::ConeNotIsotone, "the projection pair map needs the orthant");
  check_cone_space(f, cone);
  {
    const BdReport bd = check_first_bd(f, cone, std::max(50, samples / 4), seed ^ 0x5eedULL);
    if (!bd.holds)
      throw Error(ErrorCode::PreconditionViolated, "the form fails the first positivity criterion");
  }

  InequalityReport rep;
  Rng rng(seed);
  bool first = true;
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    const RVec h = cone.random_member(sub);
    const RVec g = sub.gaussian_vec(f.dim());
    RVec pi1(h.size()), pi2(h.size());
    for (size_t k = 0; k < h.size(); ++k) {
      pi1[k] = 0.5 * std::max(std::min(h[k], g[k]) + h[k], 0.0);
      pi2[k] = 0.5 * std::max(std::max(h[k], g[k]) + g[k], 0.0);
    }
    RVec r1(h.size()), r2(h.size());
    for (size_t k = 0; k < h.size(); ++k) {
      r1[k] = h[k] - pi1[k];
      r2[k] = g[k] - pi2[k];
    }
    const double value = f.form_real(pi1, r1) + f.form_real(pi2, r2);
    const double scale = 1.0 + cone.norm(h) * cone.norm(h) + cone.norm(g) * cone.norm(g);
    const double margin = value / scale;
    if (first || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      first = false;
    }
  }
  rep.holds = rep.worst_margin >= -tol;
  return rep;
}

}  // namespace dominion
