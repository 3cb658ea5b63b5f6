#include "dominion/convex_set.hpp"

#include <cmath>

namespace dominion {

bool ConvexSetC::member(const CVec& u, const RVec& v, double tol) const {
  const RVec su = s_.abs_map(u);
  RVec diff(v.size());
  for (size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - su[i];
  return s_.target_cone().in_dual(diff, tol);
}

double ConvexSetC::membership_defect(const CVec& u, const RVec& v) const {
  const RVec su = s_.abs_map(u);
  RVec diff(v.size());
  for (size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - su[i];
  return -s_.target_cone().dual_membership_distance(diff);
}

CPoint ConvexSetC::random_member(Rng& rng) const {
  CPoint p;
  const Space& dom = s_.domain();
  p.u = rng.cgaussian_vec(dom.dim());
  if (s_.kind() == PairingKind::LatticeAbs)
    for (auto& x : p.u) x = cplx(x.real() * 1.4142135623730951, 0.0);
  p.v = s_.abs_map(p.u);
  // half the members sit on the boundary (u, S(u)); the rest get dual slack
  if (rng.bernoulli(0.5)) {
    const RVec dual = s_.target_cone().dual_project(rng.gaussian_vec(static_cast<int>(p.v.size())));
    for (size_t i = 0; i < p.v.size(); ++i) p.v[i] += dual[i];
  }
  return p;
}

CPoint project_C(const ConvexSetC& c, const CVec& f1, const RVec& g, CBranch branch) {
  const Pairing& s = c.pairing();
  const Cone& cone = s.target_cone();
  const RVec sf1 = s.abs_map(f1);

  const bool c_ok = cone.contains(g, 1e-9) && cone.leq(g, sf1, 1e-9);
  if (branch == CBranch::Auto) branch = c_ok ? CBranch::FormulaC : CBranch::FormulaD;

  if (branch == CBranch::FormulaC) {
    if (!c_ok)
      throw Error(ErrorCode::PreconditionViolated,
                  "formula (c) needs g in the cone with g <= S(f1)");
    const CVec f2 = s.pair_with(f1, g);
    CPoint out;
    out.u.resize(f1.size());
    for (size_t i = 0; i < f1.size(); ++i) out.u[i] = 0.5 * (f1[i] + f2[i]);
    out.v.resize(g.size());
    for (size_t i = 0; i < g.size(); ++i) out.v[i] = 0.5 * (sf1[i] + g[i]);
    return out;
  }

  // formula (d): lattice expressions are valid for the orthant target
  if (cone.kind() != Cone::Kind::Orthant)
    throw Error(ErrorCode::ConeNotIsotone,
                "formula (d) needs a self-dual isotone projection cone target");
  RVec paired_target(g.size()), vpart(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    const double meet = std::min(sf1[i], g[i]);
    const double join = std::max(sf1[i], g[i]);
    paired_target[i] = std::max(meet + sf1[i], 0.0);
    vpart[i] = 0.5 * std::max(join + g[i], 0.0);
  }
  const CVec f2 = s.pair_with(f1, paired_target);
  CPoint out;
  out.u.resize(f1.size());
  for (size_t i = 0; i < f1.size(); ++i) out.u[i] = 0.5 * f2[i];
  out.v = std::move(vpart);
  return out;
}

namespace {

// closed-form projection onto {(w, t) : |w| <= t}: given the block w with
// r = |w| and the scalar t,
//   r <= t        -> unchanged,
//   t <= -r       -> (0, 0),
//   otherwise     -> ((r+t)/2) * (w/r, 1)
void soc_project(CVec& w, int offset, int len, double r, double& t) {
  if (r <= t) return;
  if (t <= -r) {
    for (int k = 0; k < len; ++k) w[static_cast<size_t>(offset + k)] = 0.0;
    t = 0.0;
    return;
  }
  const double beta = 0.5 * (r + t);
  const double scale = beta / r;  // r > 0 here
  for (int k = 0; k < len; ++k) w[static_cast<size_t>(offset + k)] *= scale;
  t = beta;
}

}  // namespace

CPoint project_C_reference(const Pairing& s, const CVec& f1, const RVec& g) {
  if (s.target_cone().kind() != Cone::Kind::Orthant)
    throw Error(ErrorCode::PairingUnavailable,
                "the fiberwise cone reference needs an orthant target");
  s.domain().check_vector(f1);
  s.target().check_vector(g);

  CPoint out;
  out.u = f1;
  out.v = g;
  const Space& dom = s.domain();

  if (s.kind() == PairingKind::NormPairing) {
    // a single second-order cone over the whole domain space; the weighted
    // norm replaces the fiber norm and the scaling acts on all coordinates
    const double r = dom.norm(f1);
    double t = g[0];
    if (r <= t) return out;
    if (t <= -r) {
      out.u.assign(out.u.size(), cplx{});
      out.v[0] = 0.0;
      return out;
    }
    const double beta = 0.5 * (r + t);
    const double scale = beta / r;
    for (auto& x : out.u) x *= scale;
    out.v[0] = beta;
    return out;
  }

  for (int p = 0; p < dom.point_count(); ++p) {
    const int off = dom.offset(p), len = dom.fiber(p);
    double r = 0.0;
    for (int k = 0; k < len; ++k) r += std::norm(out.u[static_cast<size_t>(off + k)]);
    r = std::sqrt(r);
    soc_project(out.u, off, len, r, out.v[static_cast<size_t>(p)]);
  }
  return out;
}

InvarianceReport check_C_invariance(const ConvexSetC& c, const OperatorForm& a,
                                    const OperatorForm& b, const std::vector<double>& t_grid,
                                    int samples, uint64_t seed, double tol) {
  if (!a.space().same_geometry(c.pairing().domain()))
    throw Error(ErrorCode::DimensionMismatch, "operator A must act on the pairing domain");
  if (b.dim() != c.pairing().target().dim())
    throw Error(ErrorCode::DimensionMismatch, "operator B must act on the pairing target");

  InvarianceReport rep;
  rep.worst_margin = 0.0;
  bool first = true;
  Rng rng(seed);

  // deterministic boundary members (delta_y e_k, S(.)) before random draws
  std::vector<CPoint> probes;
  {
    const Space& dom = c.pairing().domain();
    for (int p = 0; p < dom.point_count(); ++p)
      for (int k = 0; k < dom.fiber(p); ++k) {
        CPoint pt0;
        pt0.u.assign(static_cast<size_t>(dom.dim()), cplx{});
        pt0.u[static_cast<size_t>(dom.offset(p) + k)] = 1.0;
        pt0.v = c.pairing().abs_map(pt0.u);
        probes.push_back(std::move(pt0));
      }
  }

  for (double t : t_grid) {
    const Matrix pt = a.semigroup(t);
    const Matrix qt = b.semigroup(t);
    for (int i = 0; i < samples + static_cast<int>(probes.size()); ++i) {
      Rng sub = rng.substream(static_cast<uint64_t>(i));
      const CPoint pt0 = i < static_cast<int>(probes.size())
                             ? probes[static_cast<size_t>(i)]
                             : c.random_member(sub);
      CPoint moved;
      moved.u = pt.apply(pt0.u);
      moved.v = re_part(qt.apply(to_cvec(pt0.v)));
      const double defect = c.membership_defect(moved.u, moved.v);
      if (first || defect < rep.worst_margin) {
        rep.worst_margin = defect;
        rep.worst_t = t;
        first = false;
        if (defect < -tol * (1.0 + c.pairing().target_cone().norm(moved.v))) {
          rep.holds = false;
          rep.witness = pt0;
        }
      }
    }
  }
  return rep;
}

}  // namespace dominion
