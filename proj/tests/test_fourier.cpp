#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "confdyn/fourier.hpp"
#include "test_util.hpp"

using namespace confdyn;
using namespace confdyn_test;

TEST_CASE("constant series evaluates to its mean everywhere") {
  FourierSeries s;
  s.set(0, {1.0, 0.0});
  s.mark_real_valued();
  for (double t : {0.0, 0.17, 0.5, 0.99}) CHECK(s.evaluate(t) == doctest::Approx(1.0));
}

TEST_CASE("cosine pair at t = 0") {
  FourierSeries s;
  s.set_conjugate_pair(1, {0.5, 0.0});
  s.mark_real_valued();
  CHECK(s.evaluate(0.0) == doctest::Approx(1.0));
  CHECK(s.evaluate(0.25) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("absent frequencies are exactly zero") {
  FourierSeries s;
  s.set_conjugate_pair(3, {0.2, 0.1});
  CHECK(s.coeff(2) == std::complex<double>(0.0, 0.0));
  CHECK(s.coeff(-3) == std::conj(s.coeff(3)));
  CHECK(s.max_freq() == 3);
  CHECK(s.nonzero_count() == 2);
}

TEST_CASE("evaluation agrees with direct sine/cosine summation") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const FourierSeries s = random_real_series(rng, 16);
    for (int i = 0; i < 64; ++i) {
      const double t = static_cast<double>(i) / 64.0;
      CHECK(s.evaluate(t) == doctest::Approx(sine_cosine_oracle(s, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("real-valuedness invariant is enforced") {
  FourierSeries s;
  s.set(1, {0.5, 0.25});
  s.set(-1, {0.5, 0.25});  // not the conjugate
  CHECK_THROWS_AS(s.mark_real_valued(), NotRealValued);
  CHECK_THROWS_AS(s.evaluate(0.3), NotRealValued);  // flag never set

  FourierSeries ok;
  ok.set(2, {0.5, 0.25});
  ok.set(-2, {0.5, -0.25});
  CHECK_NOTHROW(ok.mark_real_valued());
}

TEST_CASE("one_minus_cis matches naive form and survives tiny angles") {
  for (double phi : {0.3, 1.7, 3.0, -2.2}) {
    const std::complex<double> naive =
        std::complex<double>(1.0, 0.0) - std::polar(1.0, phi);
    CHECK(std::abs(one_minus_cis(phi) - naive) <= 1e-15);
  }
  // At phi ~ 1e-80 the naive real part 1 - cos(phi) rounds to zero while the
  // stable form keeps |1 - e^{i phi}| ~ phi.
  const double tiny = 1e-80;
  const std::complex<double> v = one_minus_cis(tiny);
  CHECK(std::abs(v) == doctest::Approx(tiny).epsilon(1e-12));
  CHECK(std::abs(v) > 0.0);
}

TEST_CASE("regularity report of the zero series") {
  const RegularityReport r = regularity_report(FourierSeries{});
  CHECK(r.c0_majorant == 0.0);
  CHECK(r.c1_majorant == 0.0);
  CHECK(r.decay.empty());
}

TEST_CASE("regularity majorants sum |c_n| and |n||c_n|") {
  FourierSeries s;
  s.set_conjugate_pair(2, {0.25, 0.0});
  s.set_conjugate_pair(5, {0.0, 0.1});
  const RegularityReport r = regularity_report(s);
  CHECK(r.c0_majorant == doctest::Approx(2 * 0.25 + 2 * 0.1));
  CHECK(r.c1_majorant == doctest::Approx(2 * 2 * 0.25 + 2 * 5 * 0.1));
  REQUIRE(r.decay.size() == 4);
  CHECK(r.decay.front().first == 2);
  CHECK(r.decay.back().first == 5);
}
