#pragma once

#include <string>
#include <vector>

#include "dominion/matrix.hpp"

namespace dominion {

// Finite weighted base, optionally with a complex fiber over each point.
// Vectors are stored as flat coordinate arrays; coordinate i belongs to the
// point whose block [offset, offset+fiber) contains i. The inner product is
// <u,v> = sum_x m(x) <u(x), v(x)>_x with the standard fiber inner product.
class Space {
public:
  Space() = default;

  static Space scalar(std::vector<std::string> points, RVec weights);
  static Space fibered(std::vector<std::string> points, RVec weights, std::vector<int> fibers);

  int point_count() const { return static_cast<int>(points_.size()); }
  int dim() const { return dim_; }
  bool scalar_space() const { return scalar_; }

  const std::vector<std::string>& points() const { return points_; }
  const RVec& weights() const { return weights_; }
  const std::vector<int>& fibers() const { return fibers_; }
  int fiber(int p) const { return fibers_[static_cast<size_t>(p)]; }
  int offset(int p) const { return offsets_[static_cast<size_t>(p)]; }
  double weight(int p) const { return weights_[static_cast<size_t>(p)]; }

  // weight of each flat coordinate (point weight repeated per fiber dimension)
  const RVec& coordinate_weights() const { return coord_weights_; }

  cplx inner(const CVec& u, const CVec& v) const;
  double inner(const RVec& u, const RVec& v) const;
  double norm(const CVec& u) const;
  double norm(const RVec& u) const;

  // block of a dense operator between two points: rows at x, columns at y
  Matrix block_of(const Matrix& op, int x, int y) const;
  // fiber slice of a vector at point x
  CVec fiber_of(const CVec& u, int x) const;

  bool same_geometry(const Space& o) const;

  void check_vector(const CVec& u) const;
  void check_vector(const RVec& u) const;

private:
  std::vector<std::string> points_;
  RVec weights_;
  std::vector<int> fibers_;
  std::vector<int> offsets_;
  RVec coord_weights_;
  int dim_ = 0;
  bool scalar_ = true;
};

}  // namespace dominion
