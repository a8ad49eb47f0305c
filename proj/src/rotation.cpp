#include "confdyn/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace confdyn {

namespace {

// Partial quotients of u/v in (0,1): [0; a_1, a_2, ...] via Euclid.
std::vector<mpz_class> continued_fraction(mpz_class u, mpz_class v) {
  std::vector<mpz_class> a;
  // CF of u/v with u < v: first quotient is floor(v/u).
  mpz_class num = v, den = u;
  while (den != 0) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    a.push_back(q);
    num = den;
    den = r;
  }
  return a;
}

}  // namespace

RotationNumber RotationNumber::from_double(double theta) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("rotation number must lie in (0,1)");
  mpq_class exact(theta);  // exact dyadic rational of the double
  exact.canonicalize();
  return from_quotients(continued_fraction(exact.get_num(), exact.get_den()),
                        /*liouville_tag=*/false);
}

RotationNumber RotationNumber::from_quotients(const std::vector<mpz_class>& quotients,
                                              bool liouville_tag) {
  if (quotients.empty()) throw std::invalid_argument("empty partial quotient list");
  for (const auto& a : quotients)
    if (a < 1) throw std::invalid_argument("partial quotients must be >= 1");

  // p_k = a_k p_{k-1} + p_{k-2} with seeds p_{-1}=1, p_0=0 / q_{-1}=0, q_0=1.
  std::vector<std::pair<mpz_class, mpz_class>> conv;
  mpz_class p_prev = 1, p = 0, q_prev = 0, q = 1;
  for (const auto& a : quotients) {
    mpz_class p_next = a * p + p_prev;
    mpz_class q_next = a * q + q_prev;
    p_prev = p; p = p_next;
    q_prev = q; q = q_next;
    conv.emplace_back(p, q);
  }

  RotationNumber r;
  r.num_ = p;
  r.den_ = q;
  r.value_ = mpq_class(p, q).get_d();
  r.liouville_ = liouville_tag;
  // The last convergent IS theta and the one before it meets the approximation
  // bound with equality rather than strictly; keep k <= m-2 only.
  if (conv.size() >= 2) conv.resize(conv.size() - 2);
  r.convergents_ = std::move(conv);
  return r;
}

std::size_t RotationNumber::den_bits() const {
  return mpz_sizeinbase(den_.get_mpz_t(), 2);
}

double RotationNumber::frac_multiple(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("frac_multiple expects n >= 1");
  mpz_class r = (num_ * static_cast<unsigned long>(n)) % den_;
  return mpq_class(r, den_).get_d();
}

bool RotationNumber::frac_multiple_in(std::int64_t n, std::uint64_t pow) const {
  if (n < 1) throw std::invalid_argument("frac_multiple_in expects n >= 1");
  mpz_class r = (num_ * static_cast<unsigned long>(n)) % den_;
  if (r == 0) return false;               // fractional part must be strictly positive
  mpz_class shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), r.get_mpz_t(), pow);
  return shifted <= den_;                 // r/den <= 2^-pow
}

bool RotationNumber::convergent_invariants_hold() const {
  for (std::size_t i = 0; i + 1 < convergents_.size(); ++i) {
    const auto& [pk, qk] = convergents_[i];
    const auto& [pn, qn] = convergents_[i + 1];
    if (qn <= qk) return false;
    // |theta - p_k/q_k| < 1/(q_k q_{k+1})  <=>  |num q_k - p_k den| q_{k+1} < den
    mpz_class err = num_ * qk - pk * den_;
    mpz_class abs_err = abs(err);
    if (abs_err * qn >= den_) return false;
  }
  return true;
}

std::int64_t FrequencyLadder::frequency(int j) const {
  if (j < 1 || static_cast<std::size_t>(j) > entries.size())
    throw std::out_of_range("ladder index out of range");
  return entries[static_cast<std::size_t>(j) - 1].second;
}

double BirkhoffTrace::max_abs() const {
  double m = 0.0;
  for (double s : sums) m = std::max(m, std::abs(s));
  return m;
}

const char* to_string(GHVerdict v) {
  switch (v) {
    case GHVerdict::BoundedCoboundaryCandidate: return "BoundedCoboundaryCandidate";
    case GHVerdict::LinearGrowth: return "LinearGrowth";
    case GHVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// Distinct positive frequencies present in the series (either sign stored).
std::vector<int> positive_frequencies(const FourierSeries& s) {
  std::set<int> freqs;
  for (const auto& [n, c] : s.coeffs())
    if (n != 0) freqs.insert(std::abs(n));
  return {freqs.begin(), freqs.end()};
}

// Coefficient at +n, falling back to the conjugate of the one at -n so a
// series stored one-sided still resolves.
std::complex<double> positive_coeff(const FourierSeries& s, int n) {
  if (s.coeffs().count(n)) return s.coeff(n);
  return std::conj(s.coeff(-n));
}

}  // namespace

FourierSeries coboundary_solve(const FourierSeries& f, const RotationNumber& theta,
                               double denom_floor) {
  if (!f.real_valued()) throw NotRealValued("coboundary_solve requires real-valued f");
  const double mean = std::abs(f.coeff(0));
  if (mean > 1e-12) throw NonzeroMean(mean);

  FourierSeries g;
  for (int n : positive_frequencies(f)) {
    const double phi = kTwoPi * theta.frac_multiple(n);
    const std::complex<double> denom = one_minus_cis(phi);
    const double mag = std::abs(denom);
    if (mag < denom_floor) throw SmallDenominator(n, mag);
    g.set_conjugate_pair(n, positive_coeff(f, n) / denom);
  }
  g.mark_real_valued();
  return g;
}

FourierSeries coboundary_from_primitive(const FourierSeries& g, const RotationNumber& theta) {
  FourierSeries f;
  for (int n : positive_frequencies(g)) {
    const double phi = kTwoPi * theta.frac_multiple(n);
    f.set_conjugate_pair(n, positive_coeff(g, n) * one_minus_cis(phi));
  }
  f.mark_real_valued();
  return f;
}

BirkhoffTrace birkhoff_sums(const FourierSeries& f, const RotationNumber& theta,
                            double x0, std::int64_t K) {
  if (K < 1) throw std::invalid_argument("birkhoff_sums requires K >= 1");
  BirkhoffTrace trace;
  trace.x0 = x0;
  trace.sums.reserve(static_cast<std::size_t>(K));

  const double th = theta.value();
  // Orbit angles by accumulation: the reduction x -> x + th - floor(x + th)
  // is exact once x + th lands in [1,2), so the computed orbit telescopes
  // against any primitive g without per-step chaining error.
  double x = x0 - std::floor(x0);
  double sum = 0.0;
  for (std::int64_t i = 0; i < K; ++i) {
    sum += f.evaluate(x);
    trace.sums.push_back(sum);
    x += th;
    x -= std::floor(x);
  }

  // Least-squares line S_k ~ a + b k over k = 1..K (centered form).
  const double n = static_cast<double>(K);
  const double mean_k = 0.5 * (n + 1.0);
  double mean_s = 0.0;
  for (double s : trace.sums) mean_s += s;
  mean_s /= n;
  double skk = 0.0, sks = 0.0;
  for (std::int64_t k = 1; k <= K; ++k) {
    const double dk = static_cast<double>(k) - mean_k;
    skk += dk * dk;
    sks += dk * (trace.sums[static_cast<std::size_t>(k - 1)] - mean_s);
  }
  const double slope = skk > 0.0 ? sks / skk : 0.0;
  const double intercept = mean_s - slope * mean_k;
  double rss = 0.0;
  for (std::int64_t k = 1; k <= K; ++k) {
    const double r = trace.sums[static_cast<std::size_t>(k - 1)] - intercept -
                     slope * static_cast<double>(k);
    rss += r * r;
  }
  trace.growth_fit = {slope, std::sqrt(rss / n)};
  return trace;
}

GHReport gottschalk_hedlund_test(const FourierSeries& f, const RotationNumber& theta,
                                 double x0, std::int64_t K, double bound) {
  if (K < 100) throw std::invalid_argument("gottschalk_hedlund_test requires K >= 100");
  const BirkhoffTrace trace = birkhoff_sums(f, theta, x0, K);

  GHReport rep;
  rep.max_abs_sum = trace.max_abs();
  rep.slope = trace.growth_fit.slope;
  rep.residual = trace.growth_fit.residual;
  rep.bound = bound;
  rep.steps = K;
  if (rep.max_abs_sum <= bound) {
    rep.verdict = GHVerdict::BoundedCoboundaryCandidate;
  } else if (std::abs(rep.slope) > 10.0 * rep.residual &&
             std::abs(rep.slope) * static_cast<double>(K) > bound) {
    rep.verdict = GHVerdict::LinearGrowth;
  } else {
    rep.verdict = GHVerdict::Inconclusive;
  }
  return rep;
}

std::pair<RotationNumber, FrequencyLadder> build_liouville_theta(int J,
                                                                 std::int64_t precision_bits) {
  if (J < 1) throw std::invalid_argument("build_liouville_theta requires J >= 1");
  if (J > 24) throw std::invalid_argument("ladder tops out at J = 24 (n_J = 2^24)");
  const std::int64_t n_top = std::int64_t{1} << J;
  if (precision_bits < 4 * n_top)
    throw PrecisionExhausted("precision_bits must be at least 4*n_J = " +
                             std::to_string(4 * n_top));

  // One huge leading partial quotient puts every frequency 2^j, j <= J, in
  // the sub-2^{-n_j} band at once: theta < 1/a_1 = 2^{-(n_J + J + 1)}, so
  // {n_j theta} = n_j theta <= 2^{j - n_J - J - 1} <= 2^{-n_j - 1}. The short
  // tail of 2s keeps a nontrivial convergent list.
  std::vector<mpz_class> quotients;
  mpz_class a1;
  mpz_ui_pow_ui(a1.get_mpz_t(), 2, static_cast<unsigned long>(n_top + J + 1));
  quotients.push_back(a1);
  for (int i = 0; i < 6; ++i) quotients.emplace_back(2);

  RotationNumber theta = RotationNumber::from_quotients(quotients, /*liouville_tag=*/true);
  if (theta.den_bits() > static_cast<std::size_t>(precision_bits))
    throw PrecisionExhausted("constructed theta needs " + std::to_string(theta.den_bits()) +
                             " bits, above the requested precision");

  FrequencyLadder ladder;
  for (int j = 1; j <= J; ++j) {
    const std::int64_t n_j = std::int64_t{1} << j;
    if (!theta.frac_multiple_in(n_j, static_cast<std::uint64_t>(n_j)))
      throw PrecisionExhausted("cannot certify 0 < {n_j theta} <= 2^-n_j at j = " +
                               std::to_string(j));
    ladder.entries.emplace_back(j, n_j);
  }
  return {std::move(theta), std::move(ladder)};
}

std::pair<FourierSeries, FourierSeries> counterexample_pair(const FrequencyLadder& ladder,
                                                            const RotationNumber& theta,
                                                            int J) {
  if (J < 1) throw std::invalid_argument("counterexample_pair requires J >= 1");
  if (ladder.entries.size() < static_cast<std::size_t>(J))
    throw std::invalid_argument("ladder has fewer than J entries");

  FourierSeries f, g;
  for (int j = 1; j <= J; ++j) {
    const std::int64_t n_j = ladder.frequency(j);
    if (n_j <= 0 || n_j > std::numeric_limits<int>::max())
      throw std::invalid_argument("ladder frequency out of int range");
    const int n = static_cast<int>(n_j);
    const double gj = 1.0 / (static_cast<double>(j) * static_cast<double>(j));
    const double phi = kTwoPi * theta.frac_multiple(n_j);
    g.set_conjugate_pair(n, {gj, 0.0});
    f.set_conjugate_pair(n, gj * one_minus_cis(phi));
  }
  f.mark_real_valued();
  g.mark_real_valued();
  return {std::move(f), std::move(g)};
}

}  // namespace confdyn
