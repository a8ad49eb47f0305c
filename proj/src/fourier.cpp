#include "confdyn/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace confdyn {

void FourierSeries::set(int n, std::complex<double> c) {
  coeffs_[n] = c;
  real_valued_ = false;
}

void FourierSeries::set_conjugate_pair(int n, std::complex<double> c) {
  coeffs_[n] = c;
  coeffs_[-n] = std::conj(c);
}

std::complex<double> FourierSeries::coeff(int n) const {
  const auto it = coeffs_.find(n);
  return it == coeffs_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

int FourierSeries::max_freq() const {
  int m = 0;
  for (const auto& [n, c] : coeffs_) m = std::max(m, std::abs(n));
  return m;
}

std::size_t FourierSeries::nonzero_count() const {
  std::size_t k = 0;
  for (const auto& [n, c] : coeffs_)
    if (c != std::complex<double>(0.0, 0.0)) ++k;
  return k;
}

void FourierSeries::mark_real_valued(double tol) {
  for (const auto& [n, c] : coeffs_) {
    const std::complex<double> mirror = coeff(-n);
    if (std::abs(mirror - std::conj(c)) > tol)
      throw NotRealValued("coefficient at frequency " + std::to_string(-n) +
                          " is not the conjugate of the one at " + std::to_string(n));
  }
  real_valued_ = true;
}

std::complex<double> FourierSeries::evaluate_complex(double t) const {
  std::complex<double> s(0.0, 0.0);
  for (const auto& [n, c] : coeffs_) {
    const double phi = kTwoPi * static_cast<double>(n) * t;
    s += c * std::complex<double>(std::cos(phi), std::sin(phi));
  }
  return s;
}

double FourierSeries::evaluate(double t) const {
  if (!real_valued_)
    throw NotRealValued("evaluate() requires a real-valued series; call mark_real_valued()");
  const std::complex<double> s = evaluate_complex(t);
  if (std::abs(s.imag()) > 1e-12)
    throw NotRealValued("imaginary residue " + std::to_string(s.imag()) +
                        " exceeds 1e-12 at t = " + std::to_string(t));
  return s.real();
}

RegularityReport regularity_report(const FourierSeries& s) {
  RegularityReport r;
  for (const auto& [n, c] : s.coeffs()) {
    const double a = std::abs(c);
    r.c0_majorant += a;
    r.c1_majorant += std::abs(static_cast<double>(n)) * a;
    r.decay.emplace_back(std::llabs(static_cast<std::int64_t>(n)), a);
  }
  std::sort(r.decay.begin(), r.decay.end());
  return r;
}

}  // namespace confdyn
