#include "dominion/graph.hpp"

#include <algorithm>
#include <cmath>

namespace dominion {

void WeightedGraph::validate() const {
  const int n = vertex_count();
  if (static_cast<int>(m.size()) != n || static_cast<int>(c.size()) != n)
    throw Error(ErrorCode::InvalidGraph, "m and c must cover every vertex");
  for (int i = 0; i < n; ++i) {
    if (m[static_cast<size_t>(i)] <= 0.0)
      throw Error(ErrorCode::InvalidGraph, "vertex measure must be positive",
                  "/m/" + vertices[static_cast<size_t>(i)]);
    if (c[static_cast<size_t>(i)] < 0.0)
      throw Error(ErrorCode::InvalidGraph, "killing term must be nonnegative",
                  "/c/" + vertices[static_cast<size_t>(i)]);
  }
  for (size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (ed.x < 0 || ed.y < 0 || ed.x >= n || ed.y >= n)
      throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range",
                  "/edges/" + std::to_string(e));
    if (ed.x == ed.y)
      throw Error(ErrorCode::InvalidGraph, "loops are not allowed (b(x,x) = 0)",
                  "/edges/" + std::to_string(e));
    if (ed.x > ed.y)
      throw Error(ErrorCode::InvalidGraph, "edges must be stored with x < y",
                  "/edges/" + std::to_string(e));
    if (ed.b <= 0.0)
      throw Error(ErrorCode::InvalidGraph, "edge weight must be positive",
                  "/edges/" + std::to_string(e));
  }
  for (size_t e = 1; e < edges.size(); ++e) {
    const auto &p = edges[e - 1], &q = edges[e];
    if (p.x > q.x || (p.x == q.x && p.y >= q.y))
      throw Error(ErrorCode::InvalidGraph, "edges must be sorted and unique",
                  "/edges/" + std::to_string(e));
  }
  // (b3) row sums are finite automatically on a finite vertex set; assert
  // anyway so the serialized form is covered
  for (int x = 0; x < n; ++x) {
    double row = c[static_cast<size_t>(x)];
    for (const auto& ed : edges)
      if (ed.x == x || ed.y == x) row += ed.b;
    if (!std::isfinite(row))
      throw Error(ErrorCode::InvalidGraph, "non-finite weight sum", "/edges");
  }
}

Space WeightedGraph::scalar_space() const { return Space::scalar(vertices, m); }

double WeightedGraph::b_at(int x, int y) const {
  if (x > y) std::swap(x, y);
  for (const auto& ed : edges)
    if (ed.x == x && ed.y == y) return ed.b;
  return 0.0;
}

void MagneticInstance::validate(double tol) const {
  graph.validate();
  const int n = graph.vertex_count();
  if (static_cast<int>(fiber_dim.size()) != n)
    throw Error(ErrorCode::InvalidInstance, "fiber dimensions must cover every vertex", "/fibers");
  for (int i = 0; i < n; ++i)
    if (fiber_dim[static_cast<size_t>(i)] < 1)
      throw Error(ErrorCode::InvalidInstance, "fiber dimensions must be positive",
                  "/fibers/" + graph.vertices[static_cast<size_t>(i)]);
  if (phi.size() != graph.edges.size())
    throw Error(ErrorCode::InvalidInstance, "one connection map per edge expected", "/phi");
  for (size_t e = 0; e < phi.size(); ++e) {
    const auto& ed = graph.edges[e];
    const Matrix& u = phi[e];
    const int fx = fiber_dim[static_cast<size_t>(ed.x)];
    const int fy = fiber_dim[static_cast<size_t>(ed.y)];
    if (u.rows() != fx || u.cols() != fy)
      throw Error(ErrorCode::InvalidInstance, "connection map has wrong shape",
                  "/phi/" + graph.vertices[static_cast<size_t>(ed.x)] + "|" +
                      graph.vertices[static_cast<size_t>(ed.y)]);
    if (fx != fy)
      throw Error(ErrorCode::InvalidInstance, "connection maps must be square (unitary)",
                  "/phi/" + std::to_string(e));
    const Matrix gram = u.adjoint() * u;
    const Matrix defect = gram - Matrix::identity(fx);
    if (defect.max_abs_entry() > 1e-10 + tol)
      throw Error(ErrorCode::InvalidInstance, "connection map is not unitary",
                  "/phi/" + graph.vertices[static_cast<size_t>(ed.x)] + "|" +
                      graph.vertices[static_cast<size_t>(ed.y)]);
  }
  if (w.size() != static_cast<size_t>(n))
    throw Error(ErrorCode::InvalidInstance, "one fiber potential per vertex expected", "/W");
  for (int x = 0; x < n; ++x) {
    const Matrix& wx = w[static_cast<size_t>(x)];
    const int fx = fiber_dim[static_cast<size_t>(x)];
    if (wx.rows() != fx || wx.cols() != fx)
      throw Error(ErrorCode::InvalidInstance, "fiber potential has wrong shape",
                  "/W/" + graph.vertices[static_cast<size_t>(x)]);
    if (!wx.is_hermitian(1e-10 * (1.0 + wx.max_abs_entry())))
      throw Error(ErrorCode::InvalidInstance, "fiber potential is not Hermitian",
                  "/W/" + graph.vertices[static_cast<size_t>(x)]);
    const auto dec = hermitian_eig(wx);
    if (dec.eigenvalues.front() < -tol * (1.0 + wx.max_abs_entry()))
      throw Error(ErrorCode::InvalidInstance, "fiber potential is not pointwise positive",
                  "/W/" + graph.vertices[static_cast<size_t>(x)]);
  }
}

Space MagneticInstance::bundle_space() const {
  return Space::fibered(graph.vertices, graph.m, fiber_dim);
}

OperatorForm formal_laplacian(const WeightedGraph& g) {
  g.validate();
  const int n = g.vertex_count();
  Matrix l(n, n);
  for (int x = 0; x < n; ++x) l(x, x) = g.c[static_cast<size_t>(x)] / g.m[static_cast<size_t>(x)];
  for (const auto& ed : g.edges) {
    l(ed.x, ed.x) += ed.b / g.m[static_cast<size_t>(ed.x)];
    l(ed.y, ed.y) += ed.b / g.m[static_cast<size_t>(ed.y)];
    l(ed.x, ed.y) -= ed.b / g.m[static_cast<size_t>(ed.x)];
    l(ed.y, ed.x) -= ed.b / g.m[static_cast<size_t>(ed.y)];
  }
  return OperatorForm(g.scalar_space(), std::move(l));
}

OperatorForm magnetic_operator(const MagneticInstance& inst) {
  inst.validate();
  const Space space = inst.bundle_space();
  Matrix h(space.dim(), space.dim());
  const WeightedGraph& g = inst.graph;

  for (int x = 0; x < g.vertex_count(); ++x) {
    const int off = space.offset(x), len = space.fiber(x);
    const double mx = g.m[static_cast<size_t>(x)];
    // W(x)/m(x) block on the diagonal
    for (int i = 0; i < len; ++i)
      for (int j = 0; j < len; ++j) h(off + i, off + j) += inst.w[static_cast<size_t>(x)](i, j) / mx;
  }
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& ed = g.edges[e];
    const int ox = space.offset(ed.x), oy = space.offset(ed.y);
    const int fx = space.fiber(ed.x), fy = space.fiber(ed.y);
    const double mx = g.m[static_cast<size_t>(ed.x)];
    const double my = g.m[static_cast<size_t>(ed.y)];
    for (int i = 0; i < fx; ++i) h(ox + i, ox + i) += ed.b / mx;
    for (int i = 0; i < fy; ++i) h(oy + i, oy + i) += ed.b / my;
    const Matrix fwd = inst.phi_forward(e);   // F_y -> F_x
    const Matrix bwd = inst.phi_backward(e);  // F_x -> F_y
    for (int i = 0; i < fx; ++i)
      for (int j = 0; j < fy; ++j) h(ox + i, oy + j) -= ed.b / mx * fwd(i, j);
    for (int i = 0; i < fy; ++i)
      for (int j = 0; j < fx; ++j) h(oy + i, ox + j) -= ed.b / my * bwd(i, j);
  }
  return OperatorForm(space, std::move(h));
}

OperatorForm add_potential(const OperatorForm& f, const RVec& v_per_point) {
  const Space& space = f.space();
  if (static_cast<int>(v_per_point.size()) != space.point_count())
    throw Error(ErrorCode::DimensionMismatch, "potential must cover every point");
  for (size_t i = 0; i < v_per_point.size(); ++i)
    if (v_per_point[i] < 0.0)
      throw Error(ErrorCode::NegativePotential, "potential must be nonnegative",
                  "/V/" + space.points()[i]);
  Matrix op = f.matrix();
  for (int p = 0; p < space.point_count(); ++p)
    for (int k = 0; k < space.fiber(p); ++k) {
      const int i = space.offset(p) + k;
      op(i, i) += v_per_point[static_cast<size_t>(p)];
    }
  return OperatorForm(space, std::move(op));
}

WeightedGraph random_graph(int n, double edge_density, uint64_t seed, bool with_killing) {
  if (n < 1) throw Error(ErrorCode::InvalidParameters, "need at least one vertex");
  if (edge_density <= 0.0 || edge_density > 1.0)
    throw Error(ErrorCode::InvalidParameters, "edge density must be in (0, 1]");
  Rng rng(seed);
  WeightedGraph g;
  g.vertices.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) g.vertices[static_cast<size_t>(i)] = "v" + std::to_string(i);
  g.m.resize(static_cast<size_t>(n));
  g.c.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) g.m[static_cast<size_t>(i)] = rng.uniform(0.5, 2.0);
  if (with_killing)
    for (int i = 0; i < n; ++i)
      g.c[static_cast<size_t>(i)] = rng.bernoulli(0.5) ? rng.uniform(0.0, 1.5) : 0.0;

  std::vector<std::vector<char>> present(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
  // random spanning tree keeps the instance connected
  for (int i = 1; i < n; ++i) {
    const int parent = rng.uniform_int(0, i - 1);
    present[static_cast<size_t>(std::min(parent, i))][static_cast<size_t>(std::max(parent, i))] = 1;
  }
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (!present[static_cast<size_t>(x)][static_cast<size_t>(y)] && rng.bernoulli(edge_density))
        present[static_cast<size_t>(x)][static_cast<size_t>(y)] = 1;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (present[static_cast<size_t>(x)][static_cast<size_t>(y)])
        g.edges.push_back({x, y, rng.uniform(0.2, 2.0)});
  g.validate();
  return g;
}

namespace {

Matrix random_unitary(int d, Rng& rng) {
  if (d == 1) {
    const double theta = rng.uniform(0.0, 6.283185307179586);
    Matrix u(1, 1);
    u(0, 0) = cplx(std::cos(theta), std::sin(theta));
    return u;
  }
  // Gram-Schmidt on a complex Gaussian matrix
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.cgaussian();
  for (int col = 0; col < d; ++col) {
    for (int prev = 0; prev < col; ++prev) {
      cplx proj{};
      for (int i = 0; i < d; ++i) proj += a(i, col) * std::conj(a(i, prev));
      for (int i = 0; i < d; ++i) a(i, col) -= proj * a(i, prev);
    }
    double nrm = 0.0;
    for (int i = 0; i < d; ++i) nrm += std::norm(a(i, col));
    nrm = std::sqrt(nrm);
    for (int i = 0; i < d; ++i) a(i, col) /= nrm;
  }
  return a;
}

Matrix random_psd(int d, Rng& rng, double scale) {
  Matrix gfac(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gfac(i, j) = rng.cgaussian() * std::sqrt(scale);
  Matrix out = gfac.adjoint() * gfac;
  for (int i = 0; i < d; ++i) {
    out(i, i) = out(i, i).real();
    for (int j = i + 1; j < d; ++j) {
      const cplx avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

}  // namespace

MagneticInstance random_instance(int n, int max_fiber, double edge_density, bool ensure_w_geq_c,
                                 uint64_t seed) {
  if (max_fiber < 1) throw Error(ErrorCode::InvalidParameters, "max fiber dimension must be >= 1");
  Rng rng(seed);
  MagneticInstance inst;
  inst.graph = random_graph(n, edge_density, rng.substream(1).base_seed(), true);
  Rng local = rng.substream(2);
  inst.fiber_dim.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) inst.fiber_dim[static_cast<size_t>(i)] = local.uniform_int(1, max_fiber);
  for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
    const auto& ed = inst.graph.edges[e];
    const int fx = inst.fiber_dim[static_cast<size_t>(ed.x)];
    const int fy = inst.fiber_dim[static_cast<size_t>(ed.y)];
    if (fx != fy) {
      // unitary connection maps force equal fiber dimensions along edges;
      // collapse the pair to the smaller dimension
      const int d = std::min(fx, fy);
      inst.fiber_dim[static_cast<size_t>(ed.x)] = d;
      inst.fiber_dim[static_cast<size_t>(ed.y)] = d;
    }
  }
  // fiber dims may have shrunk; a second pass keeps all edges consistent
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& ed : inst.graph.edges) {
      const int fx = inst.fiber_dim[static_cast<size_t>(ed.x)];
      const int fy = inst.fiber_dim[static_cast<size_t>(ed.y)];
      if (fx != fy) {
        const int d = std::min(fx, fy);
        inst.fiber_dim[static_cast<size_t>(ed.x)] = d;
        inst.fiber_dim[static_cast<size_t>(ed.y)] = d;
        changed = true;
      }
    }
  }
  for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
    const int d = inst.fiber_dim[static_cast<size_t>(inst.graph.edges[e].x)];
    Rng sub = rng.substream(100 + e);
    inst.phi.push_back(random_unitary(d, sub));
  }
  for (int x = 0; x < n; ++x) {
    const int d = inst.fiber_dim[static_cast<size_t>(x)];
    Rng sub = rng.substream(10000 + static_cast<uint64_t>(x));
    Matrix wx = random_psd(d, sub, 0.5);
    if (ensure_w_geq_c) {
      const double cx = inst.graph.c[static_cast<size_t>(x)];
      for (int i = 0; i < d; ++i) wx(i, i) += cx;
    }
    inst.w.push_back(std::move(wx));
  }
  inst.validate();
  return inst;
}

MagneticInstance trivial_bundle(const WeightedGraph& g) {
  MagneticInstance inst;
  inst.graph = g;
  inst.fiber_dim.assign(g.vertices.size(), 1);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    Matrix one(1, 1);
    one(0, 0) = 1.0;
    inst.phi.push_back(std::move(one));
  }
  for (size_t x = 0; x < g.vertices.size(); ++x) {
    Matrix wx(1, 1);
    wx(0, 0) = g.c[x];
    inst.w.push_back(std::move(wx));
  }
  return inst;
}

}  // namespace dominion
