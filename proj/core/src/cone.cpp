#include "dominion/cone.hpp"

#include <algorithm>
#include <cmath>

#include "dominion/eig.hpp"

namespace dominion {

namespace {

Matrix unpack_symmetric(const RVec& v, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<size_t>(i) * n + j];
  // symmetrize; the representation invariant allows roundoff skew
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  return m;
}

RVec pack_symmetric(const Matrix& m) {
  const int n = m.rows();
  RVec v(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[static_cast<size_t>(i) * n + j] = m(i, j).real();
  return v;
}

}  // namespace

RVec pava_nonincreasing(const RVec& y, const RVec& w) {
  const size_t n = y.size();
  // blocks carry weighted sums; a nonincreasing fit merges a block with its
  // predecessor whenever the predecessor's mean is smaller
  std::vector<double> sum_wy(n), sum_w(n);
  std::vector<size_t> len(n);
  size_t nblocks = 0;
  for (size_t i = 0; i < n; ++i) {
    sum_wy[nblocks] = w[i] * y[i];
    sum_w[nblocks] = w[i];
    len[nblocks] = 1;
    ++nblocks;
    while (nblocks >= 2 &&
           sum_wy[nblocks - 2] / sum_w[nblocks - 2] < sum_wy[nblocks - 1] / sum_w[nblocks - 1]) {
      sum_wy[nblocks - 2] += sum_wy[nblocks - 1];
      sum_w[nblocks - 2] += sum_w[nblocks - 1];
      len[nblocks - 2] += len[nblocks - 1];
      --nblocks;
    }
  }
  RVec out(n);
  size_t pos = 0;
  for (size_t b = 0; b < nblocks; ++b) {
    const double v = sum_wy[b] / sum_w[b];
    for (size_t k = 0; k < len[b]; ++k) out[pos++] = v;
  }
  return out;
}

Cone Cone::orthant(Space space) {
  if (!space.scalar_space())
    throw Error(ErrorCode::InvalidParameters, "orthant cone needs a scalar space");
  return Cone(Kind::Orthant, std::move(space), 0);
}

Cone Cone::psd_matrices(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParameters, "matrix size must be positive");
  // ambient: R^{n*n} with unit weights = Hilbert-Schmidt inner product
  std::vector<std::string> labels(static_cast<size_t>(n) * n);
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = "e" + std::to_string(i);
  return Cone(Kind::PsdMatrices, Space::scalar(std::move(labels), RVec(static_cast<size_t>(n) * n, 1.0)), n);
}

Cone Cone::monotone_nonneg(Space space) {
  if (!space.scalar_space())
    throw Error(ErrorCode::InvalidParameters, "monotone cone needs a scalar space");
  return Cone(Kind::MonotoneNonneg, std::move(space), 0);
}

double Cone::membership_margin(const RVec& g) const {
  ambient_.check_vector(g);
  switch (kind_) {
    case Kind::Orthant: {
      double m = g.empty() ? 0.0 : g[0];
      for (double x : g) m = std::min(m, x);
      return m;
    }
    case Kind::PsdMatrices: {
      const auto dec = hermitian_eig(unpack_symmetric(g, psd_n_));
      return dec.eigenvalues.front();
    }
    case Kind::MonotoneNonneg: {
      double m = g.empty() ? 0.0 : g.back();
      for (size_t i = 0; i + 1 < g.size(); ++i) m = std::min(m, g[i] - g[i + 1]);
      m = std::min(m, g.back());
      return m;
    }
  }
  return 0.0;
}

bool Cone::contains(const RVec& g, double tol) const {
  return membership_margin(g) >= -tol * (1.0 + norm(g));
}

RVec Cone::project(const RVec& g) const {
  ambient_.check_vector(g);
  switch (kind_) {
    case Kind::Orthant: {
      RVec out(g.size());
      for (size_t i = 0; i < g.size(); ++i) out[i] = std::max(g[i], 0.0);
      return out;
    }
    case Kind::PsdMatrices: {
      const auto dec = hermitian_eig(unpack_symmetric(g, psd_n_));
      return pack_symmetric(dec.apply_function([](double x) { return std::max(x, 0.0); }));
    }
    case Kind::MonotoneNonneg: {
      RVec fit = pava_nonincreasing(g, ambient_.weights());
      for (auto& x : fit) x = std::max(x, 0.0);
      return fit;
    }
  }
  return g;
}

RVec Cone::dual_project(const RVec& g) const {
  RVec neg(g.size());
  for (size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
  RVec p = project(neg);
  RVec out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = g[i] + p[i];
  return out;
}

double Cone::dual_membership_distance(const RVec& g) const {
  const RVec d = dual_project(g);
  RVec diff(g.size());
  for (size_t i = 0; i < g.size(); ++i) diff[i] = d[i] - g[i];
  return norm(diff);
}

bool Cone::in_dual(const RVec& g, double tol) const {
  return dual_membership_distance(g) <= tol * (1.0 + norm(g));
}

MoreauPair Cone::moreau_decompose(const RVec& g) const {
  MoreauPair pair;
  pair.h1 = project(g);
  // h2 = P_dual(-g) = h1 - g, which makes g = h1 - h2 exact
  pair.h2.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) pair.h2[i] = pair.h1[i] - g[i];
  return pair;
}

bool Cone::leq(const RVec& g, const RVec& h, double tol) const {
  RVec diff(g.size());
  for (size_t i = 0; i < g.size(); ++i) diff[i] = h[i] - g[i];
  return contains(diff, tol);
}

void Cone::require_isotone(const char* op) const {
  if (kind_ != Kind::Orthant)
    throw Error(ErrorCode::ConeNotIsotone,
                std::string(op) + " needs a self-dual isotone projection cone (orthant)");
}

RVec Cone::positive_part(const RVec& g) const {
  require_isotone("positive_part");
  return project(g);
}

LatticeOps Cone::lattice_ops(const RVec& g, const RVec& h) const {
  require_isotone("lattice_ops");
  ambient_.check_vector(g);
  ambient_.check_vector(h);
  LatticeOps ops;
  ops.join.resize(g.size());
  ops.meet.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    const double d = std::abs(g[i] - h[i]);
    ops.join[i] = 0.5 * (g[i] + h[i] + d);
    ops.meet[i] = 0.5 * (g[i] + h[i] - d);
  }
  RVec neg(g.size());
  for (size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
  const RVec pp = project(g), pn = project(neg);
  ops.abs.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) ops.abs[i] = pp[i] + pn[i];
  return ops;
}

std::vector<RVec> Cone::corner_candidates() const {
  std::vector<RVec> out;
  const int d = ambient_dim();
  const RVec zero(static_cast<size_t>(d), 0.0);

  auto push = [&out](RVec v) { out.push_back(std::move(v)); };

  if (kind_ == Kind::PsdMatrices) {
    const int n = psd_n_;
    auto mat = [&](auto&& fill) {
      Matrix m(n, n);
      fill(m);
      return pack_symmetric(m);
    };
    for (int i = 0; i < n; ++i) {
      push(mat([&](Matrix& m) { m(i, i) = 1.0; }));
      push(mat([&](Matrix& m) { m(i, i) = -1.0; }));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        push(mat([&](Matrix& m) { m(i, j) = m(j, i) = 1.0; }));
    push(mat([&](Matrix& m) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 1.0;
    }));
    push(mat([&](Matrix& m) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = ((i + j) % 2 == 0) ? 1.0 : -1.0;
    }));
    push(mat([&](Matrix& m) {
      for (int i = 0; i < n; ++i) m(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    }));
    // diagonal minus all-ones: classic seed for order counterexamples
    push(mat([&](Matrix& m) {
      m(0, 0) = 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) -= 1.0;
    }));
    return out;
  }

  for (int i = 0; i < d; ++i) {
    RVec e = zero;
    e[static_cast<size_t>(i)] = 1.0;
    push(e);
    e[static_cast<size_t>(i)] = -1.0;
    push(e);
  }
  push(RVec(static_cast<size_t>(d), 1.0));
  push(RVec(static_cast<size_t>(d), -1.0));
  RVec alt(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) alt[static_cast<size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
  push(alt);
  if (d >= 2) {
    RVec v = zero;
    v[0] = 1.0;
    v[1] = -0.5;
    push(v);
    RVec ramp(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) ramp[static_cast<size_t>(i)] = static_cast<double>(d - i);
    push(ramp);
    RVec rev(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) rev[static_cast<size_t>(i)] = static_cast<double>(i + 1);
    push(rev);
  }
  return out;
}

std::vector<RVec> Cone::corner_cone_elements() const {
  std::vector<RVec> out;
  for (const auto& v : corner_candidates())
    if (contains(v, 1e-12)) out.push_back(v);
  if (kind_ == Kind::PsdMatrices) {
    // rank-one frames vv^T for corner vectors v
    const int n = psd_n_;
    std::vector<RVec> seeds;
    seeds.push_back(RVec(static_cast<size_t>(n), 1.0));
    RVec alt(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) alt[static_cast<size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
    seeds.push_back(alt);
    for (const auto& v : seeds) {
      Matrix m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
      out.push_back(pack_symmetric(m));
    }
  }
  return out;
}

RVec Cone::random_ambient(Rng& rng) const {
  if (kind_ == Kind::PsdMatrices) {
    const int n = psd_n_;
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = rng.gaussian();
      for (int j = i + 1; j < n; ++j) {
        const double x = rng.gaussian();
        m(i, j) = x;
        m(j, i) = x;
      }
    }
    return pack_symmetric(m);
  }
  return rng.gaussian_vec(ambient_dim());
}

RVec Cone::random_member(Rng& rng) const {
  return project(random_ambient(rng));
}

ProbeResult Cone::probe_self_dual(int samples, uint64_t seed, double tol) const {
  ProbeResult res;
  // a witness must be clearly on one side: certified membership at `tol`,
  // certified non-membership at a much coarser margin
  const double strong = 1e-6;

  auto examine = [&](const RVec& v) -> bool {
    ++res.trials;
    const double nv = 1.0 + norm(v);
    const double dual_dist = dual_membership_distance(v);
    const double cone_margin = membership_margin(v);
    const bool in_dual_tight = dual_dist <= tol * nv;
    const bool in_cone_tight = cone_margin >= -tol * nv;
    if (in_dual_tight && cone_margin < -strong * nv) {
      res.holds = false;
      res.witness = v;
      res.margin = -cone_margin;
      res.detail = "element of the dual cone outside the cone";
      return true;
    }
    if (in_cone_tight && dual_dist > strong * nv) {
      res.holds = false;
      res.witness = v;
      res.margin = dual_dist;
      res.detail = "cone element outside the dual cone";
      return true;
    }
    return false;
  };

  for (const auto& v : corner_candidates())
    if (examine(v)) return res;

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    const RVec raw = random_ambient(sub);
    if (examine(raw)) return res;
    if (examine(project(raw))) return res;
    if (examine(dual_project(raw))) return res;
  }
  return res;
}

ProbeResult Cone::probe_isotone(int samples, uint64_t seed, double tol) const {
  ProbeResult res;
  const double strong = 1e-6;

  auto examine = [&](const RVec& g, const RVec& h) -> bool {
    ++res.trials;
    if (!leq(g, h, tol)) return false;
    const RVec pg = project(g), ph = project(h);
    RVec diff(pg.size());
    for (size_t i = 0; i < pg.size(); ++i) diff[i] = ph[i] - pg[i];
    const double margin = membership_margin(diff);
    if (margin < -strong * (1.0 + norm(diff))) {
      res.holds = false;
      res.witness = g;
      res.witness_second = h;
      res.margin = -margin;
      res.detail = "g <= h but P(g) <= P(h) fails";
      return true;
    }
    return false;
  };

  const auto corners = corner_candidates();
  const auto increments = corner_cone_elements();
  for (const auto& p : corners) {
    for (const auto& d : increments) {
      RVec lo(p.size()), hi(p.size());
      for (size_t i = 0; i < p.size(); ++i) {
        lo[i] = p[i] - d[i];
        hi[i] = p[i] + d[i];
      }
      if (examine(lo, p)) return res;
      if (examine(p, hi)) return res;
    }
  }

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<uint64_t>(i));
    const RVec g = random_ambient(sub);
    const RVec d = random_member(sub);
    RVec h(g.size());
    for (size_t k = 0; k < g.size(); ++k) h[k] = g[k] + d[k];
    if (examine(g, h)) return res;
  }
  return res;
}

}  // namespace dominion
