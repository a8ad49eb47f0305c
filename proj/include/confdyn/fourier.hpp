#pragma once

// Finite trigonometric series on the circle, indexed by integer frequency.
// The circle coordinate t is measured in turns: h(t) = sum_n h^(n) e^{2 pi i n t}.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "confdyn/errors.hpp"

namespace confdyn {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// (1 - cos phi) - i sin phi computed without cancellation; for tiny phi the
// real part 2 sin^2(phi/2) stays accurate where 1 - cos(phi) would round to 0.
inline std::complex<double> one_minus_cis(double phi) {
  const double s = std::sin(0.5 * phi);
  return {2.0 * s * s, -std::sin(phi)};
}

class FourierSeries {
 public:
  FourierSeries() = default;

  // Raw coefficient write; clears the real-valuedness flag.
  void set(int n, std::complex<double> c);

  // Stores c at frequency n and conj(c) at -n, keeping the series real-valued.
  void set_conjugate_pair(int n, std::complex<double> c);

  // Coefficient at frequency n; absent frequencies are exactly zero.
  std::complex<double> coeff(int n) const;

  const std::map<int, std::complex<double>>& coeffs() const { return coeffs_; }

  // Largest |n| present (0 for the empty series).
  int max_freq() const;

  std::size_t nonzero_count() const;

  bool real_valued() const { return real_valued_; }

  // Verifies h^(-n) = conj(h^(n)) within `tol` for every stored n and sets
  // the flag; throws NotRealValued on failure.
  void mark_real_valued(double tol = 1e-14);

  // sum_n h^(n) e^{2 pi i n t} as a real number, t in turns. Requires the
  // real-valuedness flag; an imaginary residue above 1e-12 also throws.
  double evaluate(double t) const;

  std::complex<double> evaluate_complex(double t) const;

 private:
  std::map<int, std::complex<double>> coeffs_;
  bool real_valued_ = false;
};

// Weighted coefficient norms quantifying regularity of the truncated series:
// sum |h^(n)| majorizes the sup norm (C^0), sum |n| |h^(n)| majorizes the
// derivative's sup norm up to 2*pi (C^1). Divergence of the second sum as the
// truncation grows witnesses loss of differentiability.
struct RegularityReport {
  double c0_majorant = 0.0;
  double c1_majorant = 0.0;
  // (|n|, |h^(n)|) per stored frequency, sorted by |n| then n.
  std::vector<std::pair<std::int64_t, double>> decay;
};

RegularityReport regularity_report(const FourierSeries& s);

}  // namespace confdyn
