#pragma once

// Cohomological-equation analysis over the circle rotation R_theta: t -> t + theta.
//
// Solving f = g - g∘R_theta coefficientwise divides by 1 - e^{2 pi i n theta},
// which can be arbitrarily small when theta is well approximable by rationals.
// Everything theta-dependent therefore runs through exact integer arithmetic:
// theta is an exact rational of large fixed precision and fractional parts
// {n theta} are computed exactly before any rounding to double.

#include <cstdint>
#include <gmpxx.h>
#include <utility>
#include <vector>

#include "confdyn/fourier.hpp"

namespace confdyn {

class RotationNumber {
 public:
  // Exact rational carried by the given double (dyadic), with its continued
  // fraction convergents.
  static RotationNumber from_double(double theta);

  // theta = [0; a_1, ..., a_m] assembled from partial quotients.
  static RotationNumber from_quotients(const std::vector<mpz_class>& quotients,
                                       bool liouville_tag);

  // Nearest-double view of the exact rational.
  double value() const { return value_; }

  const mpz_class& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  std::size_t den_bits() const;

  // {n * theta} computed exactly, then rounded once to double. n >= 1.
  double frac_multiple(std::int64_t n) const;

  // Exact certificate of 0 < {n * theta} <= 2^-pow.
  bool frac_multiple_in(std::int64_t n, std::uint64_t pow) const;

  // Consecutive continued-fraction convergents (p_k, q_k), k >= 1. The list
  // is trimmed so that |theta - p_k/q_k| < 1/(q_k q_{k+1}) holds strictly for
  // every stored pair even though the stored theta is itself rational.
  const std::vector<std::pair<mpz_class, mpz_class>>& convergents() const {
    return convergents_;
  }

  bool is_liouville_constructed() const { return liouville_; }

  // Checks both stored-convergent invariants in exact arithmetic:
  // q_k strictly increasing and |theta - p_k/q_k| < 1/(q_k q_{k+1}).
  bool convergent_invariants_hold() const;

 private:
  RotationNumber() = default;
  mpz_class num_;
  mpz_class den_;
  double value_ = 0.0;
  std::vector<std::pair<mpz_class, mpz_class>> convergents_;
  bool liouville_ = false;
};

// Frequencies n_j, j = 1..J, with n_{-j} = -n_j implied; every entry satisfies
// n_j >= 2^j and 0 < {n_j theta} <= 2^{-n_j} for the theta it was built with.
struct FrequencyLadder {
  std::vector<std::pair<int, std::int64_t>> entries;  // (j, n_j)

  std::int64_t frequency(int j) const;  // n_j, 1-based
};

struct GrowthFit {
  double slope = 0.0;
  double residual = 0.0;  // RMS of the linear-fit residuals
};

// Partial sums S_k = sum_{i=0}^{k-1} f(x0 + i*theta mod 1), k = 1..K.
struct BirkhoffTrace {
  double x0 = 0.0;
  std::vector<double> sums;
  GrowthFit growth_fit;

  double max_abs() const;
};

enum class GHVerdict { BoundedCoboundaryCandidate, LinearGrowth, Inconclusive };

const char* to_string(GHVerdict v);

// Numerical heuristic only: a bounded prefix of Birkhoff sums is evidence for
// a coboundary, never a proof, and a finite linear-growth fit is evidence
// against. The verdict certifies nothing.
struct GHReport {
  GHVerdict verdict = GHVerdict::Inconclusive;
  double max_abs_sum = 0.0;
  double slope = 0.0;
  double residual = 0.0;
  double bound = 0.0;
  std::int64_t steps = 0;
};

// Solves g - g∘R_theta = f coefficientwise: g^(n) = f^(n) / (1 - e^{2 pi i n theta})
// for n != 0, g^(0) = 0. The solution is unique up to an additive constant.
// Throws NonzeroMean when |f^(0)| > 1e-12 (no solution: sums grow linearly)
// and SmallDenominator when any stored frequency has |1 - e^{2 pi i n theta}|
// below denom_floor.
FourierSeries coboundary_solve(const FourierSeries& f, const RotationNumber& theta,
                               double denom_floor = 1e-12);

// f = g - g∘R_theta built exactly at coefficient level: f^(n) = g^(n) (1 - e^{2 pi i n theta}).
FourierSeries coboundary_from_primitive(const FourierSeries& g, const RotationNumber& theta);

BirkhoffTrace birkhoff_sums(const FourierSeries& f, const RotationNumber& theta,
                            double x0, std::int64_t K);

GHReport gottschalk_hedlund_test(const FourierSeries& f, const RotationNumber& theta,
                                 double x0, std::int64_t K, double bound);

// Builds a rotation number admitting the frequency ladder n_j = 2^j, j <= J:
// theta = [0; a_1, 2, 2, ...] with a single huge partial quotient
// a_1 = 2^(n_J + J + 1), so that {n_j theta} ~ n_j / a_1 <= 2^{-n_j} with a
// factor-2 margin. Both ladder invariants are certified in exact arithmetic;
// PrecisionExhausted is thrown if precision_bits < 4 n_J (contract floor), if
// theta needs more bits than allowed, or if certification fails.
std::pair<RotationNumber, FrequencyLadder> build_liouville_theta(int J,
                                                                 std::int64_t precision_bits);

// The explicit smooth-f / merely-continuous-g pair truncated at |j| <= J:
//   g^(±n_j) = 1/j^2,   f^(±n_j) = g^(±n_j) (1 - e^{±2 pi i n_j theta}).
// The coefficient identity g^(n)(1 - e^{2 pi i n theta}) = f^(n) holds by
// construction; both series are real-valued.
std::pair<FourierSeries, FourierSeries> counterexample_pair(const FrequencyLadder& ladder,
                                                            const RotationNumber& theta,
                                                            int J);

}  // namespace confdyn
