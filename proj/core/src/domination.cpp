#include "dominion/domination.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace dominion {

namespace {

// block structure of the domain as seen by the pairing: the bundle splits
// per base point, the lattice has scalar fibers, the norm pairing is one
// block over the whole space
Space block_view(const Pairing& s) {
  const Space& dom = s.domain();
  switch (s.kind()) {
    case PairingKind::BundleModulus:
    case PairingKind::LatticeAbs:
      return Space::fibered(dom.points(), RVec(dom.points().size(), 1.0), dom.fibers());
    case PairingKind::NormPairing:
      return Space::fibered({"*"}, {1.0}, {dom.dim()});
    case PairingKind::Rearrangement:
      throw Error(ErrorCode::PairingUnavailable,
                  "the rearrangement admits no blockwise criterion");
  }
  return dom;
}

Space scalar_view(const Space& k) { return Space::scalar(k.points(), RVec(k.points().size(), 1.0)); }

void require_spaces(const OperatorForm& a, const OperatorForm& b, const Pairing& s) {
  if (!a.space().same_geometry(s.domain()))
    throw Error(ErrorCode::DimensionMismatch, "operator A must act on the pairing domain");
  if (b.dim() != s.target().dim())
    throw Error(ErrorCode::DimensionMismatch, "operator B must act on the pairing target");
}

// positivity of e^{-tB} on the target cone: structural when the cone is the
// orthant, sampled for the monotone cone
bool target_positivity_holds(const OperatorForm& b, const Cone& cone, double tol) {
  if (cone.kind() == Cone::Kind::Orthant) {
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j)
        if (i != j && b.matrix()(i, j).real() > tol) return false;
    return true;
  }
  const auto rep = check_positivity_preserving(b, cone, default_t_grid(), 200, 0x9051ULL, tol);
  return rep.preserving;
}

struct GridOperator {
  double value;
  Matrix p_sym;  // symmetrized coordinates on H
  Matrix q_sym;  // symmetrized coordinates on K
};

GridCheckResult run_exact_grid(const std::vector<GridOperator>& grid, const Pairing& s,
                               const std::string& check_name, double tol) {
  const Space hview = block_view(s);
  const Space kview = scalar_view(s.target());
  GridCheckResult res;
  bool first = true;
  for (const auto& g : grid) {
    const BlockDominationResult block = exact_bundle_domination(g.p_sym, hview, g.q_sym, kview, tol);
    res.per_grid.push_back(block.margin);
    if (first || block.margin < res.margin) {
      res.margin = block.margin;
      first = false;
      if (!block.holds && !res.witness) {
        DominationWitness w;
        w.check = check_name;
        w.grid_value = g.value;
        w.block_x = block.worst_x;
        w.block_y = block.worst_y;
        w.f1.assign(static_cast<size_t>(s.domain().dim()), cplx{});
        const int off = s.domain().offset(block.worst_y);
        for (size_t k = 0; k < block.worst_direction.size(); ++k)
          w.f1[static_cast<size_t>(off) + k] = block.worst_direction[k];
        w.margin = block.margin;
        res.witness = w;
      }
    }
  }
  res.holds = res.margin >= -tol;
  if (res.holds) res.witness.reset();
  return res;
}

// sampled fallback for targets without a blockwise reduction
GridCheckResult run_sampled_grid(const std::vector<GridOperator>& grid_weighted,
                                 const OperatorForm& a, const OperatorForm& b, const Pairing& s,
                                 const std::string& check_name, double tol) {
  GridCheckResult res;
  res.exact = false;
  const Cone& cone = s.target_cone();
  Rng rng(0xABCDULL);
  bool first = true;
  for (const auto& g : grid_weighted) {
    double grid_margin = 0.0;
    bool grid_first = true;
    for (int i = 0; i < 200; ++i) {
      Rng sub = rng.substream(static_cast<uint64_t>(i));
      CVec f = sub.cgaussian_vec(a.dim());
      const double n = a.space().norm(f);
      for (auto& x : f) x /= n;
      const RVec lhs = s.abs_map(g.p_sym.apply(f));  // weighted matrices here
      const RVec sf = s.abs_map(f);
      const RVec rhs = re_part(g.q_sym.apply(to_cvec(sf)));
      RVec diff(rhs.size());
      for (size_t k = 0; k < rhs.size(); ++k) diff[k] = rhs[k] - lhs[k];
      const double margin = cone.membership_margin(diff);
      if (grid_first || margin < grid_margin) {
        grid_margin = margin;
        grid_first = false;
      }
      if (margin < -tol && !res.witness) {
        DominationWitness w;
        w.check = check_name;
        w.grid_value = g.value;
        w.f1 = f;
        w.margin = margin;
        res.witness = w;
      }
    }
    res.per_grid.push_back(grid_margin);
    if (first || grid_margin < res.margin) {
      res.margin = grid_margin;
      first = false;
    }
  }
  res.holds = res.margin >= -tol;
  if (res.holds) res.witness.reset();
  return res;
}

}  // namespace

BlockDominationResult exact_bundle_domination(const Matrix& p, const Space& h, const Matrix& q,
                                              const Space& k, double tol) {
  if (p.rows() != h.dim() || p.cols() != h.dim())
    throw Error(ErrorCode::ShapeMismatch, "P must be square on the fibered space");
  if (q.rows() != k.dim() || q.cols() != k.dim())
    throw Error(ErrorCode::ShapeMismatch, "Q must be square on the scalar space");
  if (h.point_count() != k.dim())
    throw Error(ErrorCode::ShapeMismatch, "P and Q must share the base");

  BlockDominationResult res;
  bool first = true;
  for (int x = 0; x < h.point_count(); ++x) {
    for (int y = 0; y < h.point_count(); ++y) {
      const Matrix block = h.block_of(p, x, y);
      const double qxy = q(x, y).real();
      const double margin = qxy - operator_norm(block);
      if (first || margin < res.margin) {
        res.margin = margin;
        res.worst_x = x;
        res.worst_y = y;
        first = false;
      }
    }
  }
  res.holds = res.margin >= -tol;
  if (!res.holds) {
    const Matrix worst = h.block_of(p, res.worst_x, res.worst_y);
    res.worst_direction = top_right_singular_vector(worst);
  }
  return res;
}

GridCheckResult check_semigroup_domination(const OperatorForm& a, const OperatorForm& b,
                                           const Pairing& s, const std::vector<double>& t_grid,
                                           double tol) {
  require_spaces(a, b, s);
  if (!target_positivity_holds(b, s.target_cone(), tol))
    throw Error(ErrorCode::PositivityPreconditionFailed,
                "e^{-tB} does not preserve the target cone");
  std::vector<GridOperator> grid;
  const bool exact = s.pair_available();
  for (double t : t_grid) {
    if (t < 0.0) throw Error(ErrorCode::InvalidParameters, "t grid entries must be nonnegative");
    if (exact)
      grid.push_back({t, a.semigroup_symmetrized(t), b.semigroup_symmetrized(t)});
    else
      grid.push_back({t, a.semigroup(t), b.semigroup(t)});
  }
  return exact ? run_exact_grid(grid, s, "semigroup", tol)
               : run_sampled_grid(grid, a, b, s, "semigroup", tol);
}

GridCheckResult check_resolvent_domination(const OperatorForm& a, const OperatorForm& b,
                                           const Pairing& s, const std::vector<double>& alpha_grid,
                                           double tol) {
  require_spaces(a, b, s);
  const double lambda = std::max(a.lower_bound_lambda(), b.lower_bound_lambda());
  std::vector<GridOperator> grid;
  const bool exact = s.pair_available();
  for (double alpha : alpha_grid) {
    if (alpha <= lambda)
      throw Error(ErrorCode::AlphaOutOfRange, "alpha grid entry below the common lower bound");
    if (exact)
      grid.push_back({alpha, a.resolvent_symmetrized(alpha), b.resolvent_symmetrized(alpha)});
    else
      grid.push_back({alpha, a.resolvent(alpha), b.resolvent(alpha)});
  }
  return exact ? run_exact_grid(grid, s, "resolvent", tol)
               : run_sampled_grid(grid, a, b, s, "resolvent", tol);
}

FormCheckResult check_form_domination(const OperatorForm& a, const OperatorForm& b,
                                      const Pairing& s, int samples, uint64_t seed, double tol) {
  require_spaces(a, b, s);
  if (!s.pair_available())
    throw Error(ErrorCode::PairingUnavailable, "form domination needs the pairing construction");

  FormCheckResult res;
  const Space& dom = s.domain();
  const Space& tgt = s.target();
  bool first = true;

  auto add_sample = [&](const CVec& f1, const CVec& f2) {
    const double n1 = dom.norm(f1), n2 = dom.norm(f2);
    if (n1 == 0.0 || n2 == 0.0) return;
    CVec u1 = f1, u2 = f2;
    for (auto& x : u1) x /= n1;
    for (auto& x : u2) x /= n2;
    const double lhs = a.form(u1, u2).real();
    const double rhs = b.form_real(s.abs_map(u1), s.abs_map(u2));
    const double margin = lhs - rhs;
    if (first || margin < res.margin) {
      res.margin = margin;
      first = false;
      if (margin < -tol) {
        DominationWitness w;
        w.check = "form";
        w.f1 = u1;
        w.f2 = u2;
        w.margin = margin;
        res.witness = w;
      }
    }
  };

  // two-point family from the block structure: top singular direction of
  // each off-diagonal block against its worst-aligned partner, Rayleigh
  // direction of each diagonal block against itself; exact for
  // generator-level violations
  if (s.kind() == PairingKind::BundleModulus || s.kind() == PairingKind::LatticeAbs) {
    const int np = dom.point_count();
    for (int y = 0; y < np; ++y) {
      for (int x = 0; x < np; ++x) {
        if (x == y) continue;
        const Matrix block = dom.block_of(a.matrix(), x, y);
        if (block.frobenius_norm() == 0.0) continue;
        const CVec v = top_right_singular_vector(block);
        CVec bv = block.apply(v);
        const double nbv = [&] {
          double acc = 0.0;
          for (const auto& z : bv) acc += std::norm(z);
          return std::sqrt(acc);
        }();
        if (nbv == 0.0) continue;
        CVec f1(static_cast<size_t>(dom.dim()), cplx{});
        CVec f2(static_cast<size_t>(dom.dim()), cplx{});
        for (int k = 0; k < dom.fiber(y); ++k)
          f1[static_cast<size_t>(dom.offset(y) + k)] = v[static_cast<size_t>(k)];
        for (int k = 0; k < dom.fiber(x); ++k)
          f2[static_cast<size_t>(dom.offset(x) + k)] = -bv[static_cast<size_t>(k)] / nbv;
        if (s.kind() == PairingKind::LatticeAbs) {
          // keep the pair real: the block is 1x1 and real for lattice spaces
          f1[static_cast<size_t>(dom.offset(y))] = 1.0;
          f2[static_cast<size_t>(dom.offset(x))] =
              a.matrix()(dom.offset(x), dom.offset(y)).real() > 0.0 ? -1.0 : 1.0;
        }
        add_sample(f1, f2);
      }
      const Matrix diag = dom.block_of(a.matrix(), y, y);
      const auto dec = hermitian_eig(Matrix(0.5 * (diag + diag.adjoint())));
      CVec f(static_cast<size_t>(dom.dim()), cplx{});
      for (int k = 0; k < dom.fiber(y); ++k)
        f[static_cast<size_t>(dom.offset(y) + k)] = dec.basis(k, 0);
      add_sample(f, f);
    }
  }

  // random paired samples: the generator construction, dominated and
  // unconstrained targets, plus free directions on zeroed fibers
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    const bool dominated = sub.bernoulli(0.5);
    const auto ps = s.sample_paired(sub, dominated, 0.25);
    add_sample(ps.f1, ps.f2);

    // the paired element is unique only under g <= S(f1); on zero fibers of
    // f1 any direction pairs, so explore one
    if (s.kind() == PairingKind::BundleModulus) {
      CVec f2 = ps.f2;
      bool touched = false;
      for (int p = 0; p < dom.point_count(); ++p) {
        const int off = dom.offset(p), len = dom.fiber(p);
        double n1 = 0.0;
        for (int k = 0; k < len; ++k) n1 += std::norm(ps.f1[static_cast<size_t>(off + k)]);
        if (n1 == 0.0) {
          for (int k = 0; k < len; ++k) f2[static_cast<size_t>(off + k)] = sub.cgaussian();
          touched = true;
        }
      }
      if (touched) add_sample(ps.f1, f2);
    }

    // (I2) constructive round-trip on the dominated draws
    if (dominated && res.ideal_i2_ok) {
      const RVec sf2 = s.abs_map(ps.f2);
      double dev = 0.0;
      for (size_t k = 0; k < sf2.size(); ++k) dev = std::max(dev, std::abs(sf2[k] - ps.g[k]));
      if (dev > 1e-8 * (1.0 + tgt.norm(ps.g)) || !s.is_paired(ps.f1, ps.f2, 1e-7))
        res.ideal_i2_ok = false;
    }
  }

  res.holds = res.margin >= -tol && res.ideal_i2_ok;
  if (res.margin >= -tol) res.witness.reset();
  return res;
}

KatoResult kato_check(const OperatorForm& a, const OperatorForm& b, const Pairing& s, int samples,
                      uint64_t seed, double tol) {
  require_spaces(a, b, s);
  {
    const auto sg = check_semigroup_domination(a, b, s, default_t_grid(), tol);
    if (!sg.holds)
      throw Error(ErrorCode::PreconditionViolated,
                  "Kato's inequality needs semigroup domination");
  }
  KatoResult res;
  const Space& dom = s.domain();
  const Space& tgt = s.target();
  Rng rng(seed);
  bool first = true;
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    CVec f = sub.cgaussian_vec(dom.dim());
    if (s.kind() == PairingKind::LatticeAbs)
      for (auto& x : f) x = cplx(x.real() * 1.4142135623730951, 0.0);
    const double nf = dom.norm(f);
    for (auto& x : f) x /= nf;
    RVec g(static_cast<size_t>(tgt.dim()));
    for (auto& x : g) x = std::abs(sub.gaussian());
    const double ng = tgt.norm(g);
    for (auto& x : g) x /= ng;

    const CVec f2 = s.pair_with(f, g);
    const double lhs = dom.inner(f2, a.apply(f)).real();
    const double rhs = b.form_real(s.abs_map(f), g);
    const double margin = lhs - rhs;
    if (first || margin < res.margin) {
      res.margin = margin;
      first = false;
    }
  }
  res.holds = res.margin >= -tol;
  return res;
}

AlgebraReport algebra_checks(const Matrix& p1, const Matrix& q1, const Matrix& p2,
                             const Matrix& q2, const Space& h, const Space& k, cplx a1, cplx a2,
                             double tol) {
  AlgebraReport rep;
  const auto d1 = exact_bundle_domination(p1, h, q1, k, tol);
  const auto d2 = exact_bundle_domination(p2, h, q2, k, tol);
  rep.inputs_dominated = d1.holds && d2.holds;
  if (!rep.inputs_dominated)
    throw Error(ErrorCode::PreconditionViolated, "input pairs must be dominated");

  const Matrix pc = p1 * a1 + p2 * a2;
  const Matrix qc = q1 * std::abs(a1) + q2 * std::abs(a2);
  const auto dc = exact_bundle_domination(pc, h, qc, k, tol);
  rep.combination_holds = dc.holds;
  rep.combination_margin = dc.margin;

  rep.q1_preserves_cone = true;
  for (int i = 0; i < q1.rows() && rep.q1_preserves_cone; ++i)
    for (int j = 0; j < q1.cols(); ++j)
      if (q1(i, j).real() < -tol) {
        rep.q1_preserves_cone = false;
        break;
      }

  const auto dp = exact_bundle_domination(p1 * p2, h, q1 * q2, k, tol);
  rep.product_holds = dp.holds;
  rep.product_margin = dp.margin;
  return rep;
}

DominationReport verify_theorem_equivalence(const OperatorForm& a, const OperatorForm& b,
                                            const Pairing& s, const RunConfig& config) {
  DominationReport rep;
  rep.config = config;

  rep.t_grid = config.t_grid;
  // the form condition is the small-time shadow of the semigroup condition
  rep.t_grid.push_back(1e-3);
  std::sort(rep.t_grid.begin(), rep.t_grid.end());
  rep.t_grid.erase(std::unique(rep.t_grid.begin(), rep.t_grid.end()), rep.t_grid.end());

  if (config.alpha_grid) {
    rep.alpha_grid = *config.alpha_grid;
  } else {
    const double lambda = std::max(a.lower_bound_lambda(), b.lower_bound_lambda());
    rep.alpha_grid = {lambda + 0.1, lambda + 1.0, lambda + 10.0};
  }

  const auto sg = check_semigroup_domination(a, b, s, rep.t_grid, config.tol);
  rep.semigroup = sg.holds;
  rep.semigroup_margin = sg.margin;
  rep.semigroup_per_t = sg.per_grid;
  if (sg.witness) rep.witness = sg.witness;

  const auto rv = check_resolvent_domination(a, b, s, rep.alpha_grid, config.tol);
  rep.resolvent = rv.holds;
  rep.resolvent_margin = rv.margin;
  rep.resolvent_per_alpha = rv.per_grid;
  if (!rep.witness && rv.witness) rep.witness = rv.witness;

  const auto fm = check_form_domination(a, b, s, config.samples, config.seed, config.tol);
  rep.form = fm.holds;
  rep.form_margin = fm.margin;
  if (!rep.witness && fm.witness) rep.witness = fm.witness;

  rep.unanimous = (rep.semigroup == rep.resolvent) && (rep.resolvent == rep.form);
  return rep;
}

double reevaluate_witness(const DominationReport& report, const OperatorForm& a,
                          const OperatorForm& b, const Pairing& s) {
  if (!report.witness)
    throw Error(ErrorCode::PreconditionViolated, "report carries no witness");
  const DominationWitness& w = *report.witness;
  if (w.check == "form") {
    const double lhs = a.form(w.f1, w.f2).real();
    const double rhs = b.form_real(s.abs_map(w.f1), s.abs_map(w.f2));
    return lhs - rhs;
  }
  const Matrix p = (w.check == "semigroup") ? a.semigroup(w.grid_value) : a.resolvent(w.grid_value);
  const Matrix q = (w.check == "semigroup") ? b.semigroup(w.grid_value) : b.resolvent(w.grid_value);
  const RVec lhs = s.abs_map(p.apply(w.f1));
  const RVec sf = s.abs_map(w.f1);
  const RVec rhs = re_part(q.apply(to_cvec(sf)));
  if (w.block_x >= 0) {
    return rhs[static_cast<size_t>(w.block_x)] - lhs[static_cast<size_t>(w.block_x)];
  }
  RVec diff(rhs.size());
  for (size_t i = 0; i < rhs.size(); ++i) diff[i] = rhs[i] - lhs[i];
  return s.target_cone().membership_margin(diff);
}

int thread_cap() {
  const char* env = std::getenv("DOMINION_THREADS");
  int cap = 0;
  if (env) cap = std::atoi(env);
  if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, cap);
}

std::vector<DominationReport> sweep_equivalence(const std::vector<MagneticInstance>& instances,
                                                const RunConfig& config) {
  std::vector<DominationReport> reports(instances.size());
  std::atomic<size_t> next{0};
  const int workers = std::min<int>(thread_cap(), static_cast<int>(instances.size()));

  auto run = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      RunConfig local = config;
      uint64_t sm = config.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
      local.seed = splitmix64(sm);
      const OperatorForm a = magnetic_operator(instances[i]);
      const OperatorForm b = formal_laplacian(instances[i].graph);
      const Pairing s = Pairing::bundle_modulus(instances[i].bundle_space());
      reports[i] = verify_theorem_equivalence(a, b, s, local);
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int wi = 0; wi < workers; ++wi) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  return reports;
}

}  // namespace dominion
