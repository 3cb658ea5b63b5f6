#pragma once

#include <string>
#include <vector>

#include "dominion/operator_form.hpp"
#include "dominion/rng.hpp"

namespace dominion {

// Weighted graph (X, b, c, m): symmetric edge weights b with zero diagonal,
// killing term c >= 0, vertex measure m > 0. Edges are stored sparsely as
// (x, y, b) with x < y so the symmetry of b is structural.
struct WeightedGraph {
  struct Edge {
    int x, y;
    double b;
  };

  std::vector<std::string> vertices;
  RVec m;
  RVec c;
  std::vector<Edge> edges;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  void validate() const;
  Space scalar_space() const;
  double b_at(int x, int y) const;
};

// Hermitian bundle over a weighted graph: fiber dimensions, unitary
// connection maps Phi_{x,y}: F_y -> F_x stored along the canonical (x < y)
// edges (the reverse direction is the adjoint), and a pointwise positive
// fiber potential W.
struct MagneticInstance {
  WeightedGraph graph;
  std::vector<int> fiber_dim;
  std::vector<Matrix> phi;  // per edge, shape fiber(x) x fiber(y)
  std::vector<Matrix> w;    // per vertex, Hermitian PSD

  void validate(double tol = 1e-9) const;
  Space bundle_space() const;
  Matrix phi_forward(size_t edge_index) const { return phi[edge_index]; }
  Matrix phi_backward(size_t edge_index) const { return phi[edge_index].adjoint(); }
};

// L f(x) = (1/m(x)) sum_y b(x,y)(f(x) - f(y)) + (c(x)/m(x)) f(x);
// the associated form is the Dirichlet sum
//   (1/2) sum_{x,y} b(x,y) |f(x)-f(y)|^2 + sum_x c(x) |f(x)|^2.
OperatorForm formal_laplacian(const WeightedGraph& g);

// H u(x) = (1/m(x)) [ sum_y b(x,y)(u(x) - Phi_{x,y} u(y)) + W(x) u(x) ];
// the associated form is
//   (1/2) sum_{x,y} b(x,y) |u(x) - Phi_{x,y} u(y)|^2 + sum_x <W(x)u(x), u(x)>.
OperatorForm magnetic_operator(const MagneticInstance& inst);

// a(u) = b(u) + sum_x V(x) |u(x)|^2 m(x): adds the diagonal V (per point,
// measure-weighted). V must be nonnegative.
OperatorForm add_potential(const OperatorForm& f, const RVec& v_per_point);

WeightedGraph random_graph(int n, double edge_density, uint64_t seed, bool with_killing = true);

// Connected random instance; unitaries are phases (fiber dimension 1) or
// orthonormalized complex Gaussian matrices. With ensure_w_geq_c the fiber
// potential is c(x) I + G^H G, so W(x) - c(x) I is positive semidefinite by
// construction.
MagneticInstance random_instance(int n, int max_fiber, double edge_density, bool ensure_w_geq_c,
                                 uint64_t seed);

// scalar reduction: the instance with trivial line bundle, Phi = 1, W = c
MagneticInstance trivial_bundle(const WeightedGraph& g);

}  // namespace dominion
