#include "dominion/space.hpp"

#include <cmath>

namespace dominion {

Space Space::scalar(std::vector<std::string> points, RVec weights) {
  return fibered(std::move(points), std::move(weights),
                 std::vector<int>(weights.size(), 1));
}

Space Space::fibered(std::vector<std::string> points, RVec weights, std::vector<int> fibers) {
  if (points.size() != weights.size() || points.size() != fibers.size())
    throw Error(ErrorCode::InvalidParameters, "points, weights and fibers must align");
  Space s;
  s.points_ = std::move(points);
  s.weights_ = std::move(weights);
  s.fibers_ = std::move(fibers);
  s.offsets_.resize(s.points_.size());
  s.dim_ = 0;
  s.scalar_ = true;
  for (size_t p = 0; p < s.points_.size(); ++p) {
    if (s.weights_[p] <= 0.0)
      throw Error(ErrorCode::InvalidParameters, "weights must be strictly positive",
                  "/m/" + s.points_[p]);
    if (s.fibers_[p] < 1)
      throw Error(ErrorCode::InvalidParameters, "fiber dimensions must be positive",
                  "/fibers/" + s.points_[p]);
    if (s.fibers_[p] != 1) s.scalar_ = false;
    s.offsets_[p] = s.dim_;
    s.dim_ += s.fibers_[p];
  }
  s.coord_weights_.resize(static_cast<size_t>(s.dim_));
  for (size_t p = 0; p < s.points_.size(); ++p)
    for (int k = 0; k < s.fibers_[p]; ++k)
      s.coord_weights_[static_cast<size_t>(s.offsets_[p] + k)] = s.weights_[p];
  return s;
}

cplx Space::inner(const CVec& u, const CVec& v) const {
  check_vector(u);
  check_vector(v);
  cplx acc{};
  for (int i = 0; i < dim_; ++i)
    acc += coord_weights_[static_cast<size_t>(i)] * u[static_cast<size_t>(i)] *
           std::conj(v[static_cast<size_t>(i)]);
  return acc;
}

double Space::inner(const RVec& u, const RVec& v) const {
  check_vector(u);
  check_vector(v);
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i)
    acc += coord_weights_[static_cast<size_t>(i)] * u[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
  return acc;
}

double Space::norm(const CVec& u) const {
  check_vector(u);
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i)
    acc += coord_weights_[static_cast<size_t>(i)] * std::norm(u[static_cast<size_t>(i)]);
  return std::sqrt(acc);
}

double Space::norm(const RVec& u) const {
  check_vector(u);
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i)
    acc += coord_weights_[static_cast<size_t>(i)] * u[static_cast<size_t>(i)] * u[static_cast<size_t>(i)];
  return std::sqrt(acc);
}

Matrix Space::block_of(const Matrix& op, int x, int y) const {
  return op.block(offset(x), offset(y), fiber(x), fiber(y));
}

CVec Space::fiber_of(const CVec& u, int x) const {
  CVec out(static_cast<size_t>(fiber(x)));
  for (int k = 0; k < fiber(x); ++k) out[static_cast<size_t>(k)] = u[static_cast<size_t>(offset(x) + k)];
  return out;
}

bool Space::same_geometry(const Space& o) const {
  if (dim_ != o.dim_ || points_.size() != o.points_.size()) return false;
  for (size_t p = 0; p < points_.size(); ++p) {
    if (fibers_[p] != o.fibers_[p]) return false;
    if (std::abs(weights_[p] - o.weights_[p]) > 1e-12 * (1.0 + std::abs(weights_[p]))) return false;
  }
  return true;
}

void Space::check_vector(const CVec& u) const {
  if (static_cast<int>(u.size()) != dim_)
    throw Error(ErrorCode::DimensionMismatch, "vector does not live in this space");
}

void Space::check_vector(const RVec& u) const {
  if (static_cast<int>(u.size()) != dim_)
    throw Error(ErrorCode::DimensionMismatch, "vector does not live in this space");
}

}  // namespace dominion
