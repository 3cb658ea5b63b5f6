#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <vector>

namespace dominion {

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with fully specified double conversion. The standard library
// engines are reproducible but the distributions are not, and byte-identical
// reports across runs are part of the contract, so everything is hand-rolled.
class Rng {
public:
  explicit Rng(uint64_t seed) : base_seed_(seed) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform in [0, 1) with 53 random bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // integer in [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Box-Muller without caching the spare value, so the stream position is a
  // pure function of the call count.
  double gaussian() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::complex<double> cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

  std::vector<double> gaussian_vec(int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (auto& x : v) x = gaussian();
    return v;
  }

  std::vector<std::complex<double>> cgaussian_vec(int n) {
    std::vector<std::complex<double>> v(static_cast<size_t>(n));
    for (auto& x : v) x = cgaussian();
    return v;
  }

  // Independent substream derived from the original seed, not the evolving
  // state: results stay deterministic under any parallel schedule.
  Rng substream(uint64_t label) const {
    uint64_t sm = base_seed_ ^ (0xd1342543de82ef95ULL * (label + 1));
    return Rng(splitmix64(sm));
  }

  uint64_t base_seed() const { return base_seed_; }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t base_seed_;
  uint64_t s_[4];
};

}  // namespace dominion
