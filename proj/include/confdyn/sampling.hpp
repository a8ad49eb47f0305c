#pragma once

// Deterministic low-discrepancy sampling and order-fixed reductions.
// Both are reproducibility primitives: reports must not depend on the
// platform's random source or on summation order.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "confdyn/linalg.hpp"

namespace confdyn {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Additive-recurrence (Kronecker) sequence on [0,1)^dim with irrational
// strides frac(sqrt(p_d)); the seed only shifts the starting offsets, so
// identical (dim, seed, k) always yields the same point.
class WeylSampler {
 public:
  WeylSampler(int dim, std::uint64_t seed) : strides_(dim), offsets_(dim) {
    static const int primes[] = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,
                                 37,  41,  43,  47,  53,  59,  61,  67,  71,  73,  79,
                                 83,  89,  97,  101, 103, 107, 109, 113, 127, 131};
    static_assert(sizeof(primes) / sizeof(primes[0]) == 32);
    if (dim < 1 || dim > 32) throw std::invalid_argument("sampler supports 1..32 dimensions");
    std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x60bee2bee120fc15ULL;
    for (int d = 0; d < dim; ++d) {
      const double s = std::sqrt(static_cast<double>(primes[d]));
      strides_[d] = s - std::floor(s);
      offsets_[d] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    }
  }

  // k-th point of the sequence in [0,1)^dim.
  Vec unit_point(std::uint64_t k) const {
    Vec p(strides_.size());
    for (std::size_t d = 0; d < strides_.size(); ++d) {
      const double v = offsets_[d] + static_cast<double>(k) * strides_[d];
      p[d] = v - std::floor(v);
    }
    return p;
  }

  // k-th point mapped to the cube [-1,1]^dim.
  Vec cube_point(std::uint64_t k) const {
    Vec p = unit_point(k);
    for (double& x : p) x = 2.0 * x - 1.0;
    return p;
  }

 private:
  std::vector<double> strides_;
  std::vector<double> offsets_;
};

// Pairwise (tree) summation. The reduction order is a fixed function of the
// index range, so the result is bit-reproducible and independent of any
// parallel split along the same tree.
inline double pairwise_sum(const double* data, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace confdyn
