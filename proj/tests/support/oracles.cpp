#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dominion::test {

RVec qp_monotone_projection(const RVec& g, const RVec& w) {
  const int n = static_cast<int>(g.size());
  RVec best;
  double best_obj = std::numeric_limits<double>::infinity();

  // constraint bits: i < n-1 means f_i = f_{i+1}; bit n-1 means f_{n-1} = 0
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    // consecutive equality constraints merge coordinates into blocks
    RVec f(g.size());
    int i = 0;
    bool last_block_zero = false;
    while (i < n) {
      int j = i;
      while (j < n - 1 && (mask & (1u << j))) ++j;
      double sw = 0.0, swy = 0.0;
      for (int k = i; k <= j; ++k) {
        sw += w[static_cast<size_t>(k)];
        swy += w[static_cast<size_t>(k)] * g[static_cast<size_t>(k)];
      }
      double value = swy / sw;
      if (j == n - 1 && (mask & (1u << (n - 1)))) {
        value = 0.0;
        last_block_zero = true;
      }
      for (int k = i; k <= j; ++k) f[static_cast<size_t>(k)] = value;
      i = j + 1;
    }
    (void)last_block_zero;

    bool feasible = f[static_cast<size_t>(n - 1)] >= -1e-12;
    for (int k = 0; k + 1 < n && feasible; ++k)
      if (f[static_cast<size_t>(k)] - f[static_cast<size_t>(k + 1)] < -1e-12) feasible = false;
    if (!feasible) continue;

    double obj = 0.0;
    for (int k = 0; k < n; ++k) {
      const double d = f[static_cast<size_t>(k)] - g[static_cast<size_t>(k)];
      obj += w[static_cast<size_t>(k)] * d * d;
    }
    if (obj < best_obj) {
      best_obj = obj;
      best = f;
    }
  }
  return best;
}

RVec permutation_rearrangement(const CVec& f) {
  RVec mods(f.size());
  for (size_t i = 0; i < f.size(); ++i) mods[i] = std::abs(f[i]);
  std::vector<size_t> perm(f.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::sort(perm.begin(), perm.end());
  RVec found;
  do {
    bool ok = true;
    for (size_t i = 0; i + 1 < perm.size() && ok; ++i)
      if (mods[perm[i]] < mods[perm[i + 1]]) ok = false;
    if (ok) {
      RVec arranged(f.size());
      for (size_t i = 0; i < perm.size(); ++i) arranged[i] = mods[perm[i]];
      if (found.empty()) found = arranged;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

bool projection_variational_ok(const Cone& cone, const RVec& g, const RVec& p, int samples,
                               uint64_t seed, double tol) {
  Rng rng(seed);
  const double scale = 1.0 + cone.norm(g) * cone.norm(g);
  for (const auto& y : cone.corner_cone_elements()) {
    double ip = 0.0;
    RVec gy(g.size()), yp(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
      gy[i] = g[i] - p[i];
      yp[i] = y[i] - p[i];
    }
    ip = cone.inner(gy, yp);
    if (ip > tol * scale) return false;
  }
  for (int s = 0; s < samples; ++s) {
    Rng sub = rng.substream(static_cast<uint64_t>(s));
    const RVec y = cone.random_member(sub);
    RVec gy(g.size()), yp(g.size());
    for (size_t i = 0; i < g.size(); ++i) {
      gy[i] = g[i] - p[i];
      yp[i] = y[i] - p[i];
    }
    if (cone.inner(gy, yp) > tol * scale) return false;
  }
  return true;
}

Matrix random_hermitian(int n, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.gaussian();
    for (int j = i + 1; j < n; ++j) {
      const cplx z = rng.cgaussian();
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

}  // namespace dominion::test
