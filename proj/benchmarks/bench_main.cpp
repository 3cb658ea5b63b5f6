#include <benchmark/benchmark.h>

#include <dominion/domination.hpp>

using namespace dominion;

namespace {

Matrix make_hermitian(int n, uint64_t seed) {
  Rng rng(seed);
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

}  // namespace

static void EigHermitian(benchmark::State& state) {
  const Matrix a = make_hermitian(static_cast<int>(state.range(0)), 11);
  for (auto _ : state) {
    auto dec = hermitian_eig(a);
    benchmark::DoNotOptimize(dec.eigenvalues.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(EigHermitian)->RangeMultiplier(2)->Range(4, 64)->Complexity();

static void SemigroupApply(benchmark::State& state) {
  const Matrix a = make_hermitian(static_cast<int>(state.range(0)), 12);
  for (auto _ : state) {
    auto e = semigroup_apply(a, 0.7);
    benchmark::DoNotOptimize(e.data().data());
  }
}
BENCHMARK(SemigroupApply)->RangeMultiplier(2)->Range(4, 32);

static void ProjectOrthant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::string> pts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i)] = "p" + std::to_string(i);
  const Cone cone = Cone::orthant(Space::scalar(pts, RVec(static_cast<size_t>(n), 1.0)));
  Rng rng(13);
  const RVec g = rng.gaussian_vec(n);
  for (auto _ : state) {
    auto p = cone.project(g);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(ProjectOrthant)->Range(8, 256);

static void ProjectPsd(benchmark::State& state) {
  const Cone cone = Cone::psd_matrices(static_cast<int>(state.range(0)));
  Rng rng(14);
  const RVec g = cone.random_ambient(rng);
  for (auto _ : state) {
    auto p = cone.project(g);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(ProjectPsd)->DenseRange(2, 6);

static void ProjectMonotone(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<std::string> pts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i)] = "p" + std::to_string(i);
  const Cone cone = Cone::monotone_nonneg(Space::scalar(pts, RVec(static_cast<size_t>(n), 1.0)));
  Rng rng(15);
  const RVec g = rng.gaussian_vec(n);
  for (auto _ : state) {
    auto p = cone.project(g);
    benchmark::DoNotOptimize(p.data());
  }
}
BENCHMARK(ProjectMonotone)->Range(8, 256);

static void VerifyTheoremMagnetic(benchmark::State& state) {
  const MagneticInstance inst =
      random_instance(static_cast<int>(state.range(0)), 3, 0.5, true, 2026);
  const OperatorForm a = magnetic_operator(inst);
  const OperatorForm b = formal_laplacian(inst.graph);
  const Pairing s = Pairing::bundle_modulus(inst.bundle_space());
  RunConfig cfg;
  cfg.samples = 200;
  cfg.seed = 5;
  for (auto _ : state) {
    auto rep = verify_theorem_equivalence(a, b, s, cfg);
    benchmark::DoNotOptimize(&rep);
  }
}
BENCHMARK(VerifyTheoremMagnetic)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
