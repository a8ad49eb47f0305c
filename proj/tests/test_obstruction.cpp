#include <doctest.h>

#include <cmath>

#include "confdyn/flows.hpp"
#include "confdyn/fourier.hpp"  // kTwoPi
#include "confdyn/obstruction.hpp"
#include "confdyn/sampling.hpp"

using namespace confdyn;

namespace {

PointMap flow_map(const ConformalFlowSpec& spec, double t) {
  return [spec, t](const Vec& p) { return spec.exact_flow(t, p); };
}

ScalarField flow_factor(const ConformalFlowSpec& spec, double t) {
  return [spec, t](const Vec& p) { return spec.expected_factor(t, p); };
}

}  // namespace

TEST_CASE("Newton finds the isolated fixed point of phi_F") {
  const auto map = flow_map(flow_spec_F(1), 1.0);
  const FixedPointSearch r = find_fixed_points(map, {{0.1, 0.3, -0.2}}, 1e-10);
  REQUIRE(r.points.size() == 1);
  CHECK(norm2(r.points[0]) <= 1e-10);
  CHECK(r.outcomes[0] == SeedOutcome::Converged);
}

TEST_CASE("identity map yields a singular Newton step for every seed") {
  const PointMap id = [](const Vec& p) { return p; };
  const FixedPointSearch r =
      find_fixed_points(id, {{0.5, 0.5}, {-1.0, 2.0}, {0.0, 3.0}}, 1e-10);
  CHECK(r.points.empty());
  CHECK(r.singular_count == 3);
  for (SeedOutcome o : r.outcomes) CHECK(o == SeedOutcome::SingularNewtonStep);
}

TEST_CASE("the fixed line of phi_H is reported as singular, near or on the line") {
  const auto map = flow_map(flow_spec_H(1), 1.0);
  const FixedPointSearch near = find_fixed_points(map, {{0.01, 0.5, -0.02}}, 1e-10);
  CHECK(near.singular_count == 1);

  // Even an exact point of the fixed line has no isolation certificate; it
  // goes to criterion_check directly, which accepts the point as given.
  const FixedPointSearch exact = find_fixed_points(map, {{0.0, 0.5, 0.0}}, 1e-10);
  CHECK(exact.points.empty());
  CHECK(exact.singular_count == 1);
  const ConformalFlowSpec spec = flow_spec_H(1);
  const ObstructionVerdict v =
      criterion_check(flow_map(spec, 1.0), flow_factor(spec, 1.0), {0.0, 0.5, 0.0}, 1);
  CHECK(v.residual == 0.0);
}

TEST_CASE("seeds converging to the same point are deduplicated") {
  const auto map = flow_map(flow_spec_F(1), 1.0);
  const FixedPointSearch r =
      find_fixed_points(map, {{0.1, 0.1, 0.1}, {-0.2, 0.3, 0.05}, {0.4, -0.4, 0.2}}, 1e-10);
  CHECK(r.points.size() == 1);
}

TEST_CASE("a map without fixed points reports no convergence") {
  // x -> x + x^2 + 1 has no real fixed point; Newton wanders until max_iter.
  const PointMap drift = [](const Vec& p) { return Vec{p[0] + p[0] * p[0] + 1.0}; };
  const FixedPointSearch r = find_fixed_points(drift, {{0.5}, {2.0}}, 1e-12, 12);
  CHECK(r.points.empty());
  CHECK(r.no_convergence_count == 2);
}

TEST_CASE("criterion at the fixed line of phi_H convicts with factor sum t") {
  const ConformalFlowSpec spec = flow_spec_H(1);
  const ObstructionVerdict v =
      criterion_check(flow_map(spec, 1.0), flow_factor(spec, 1.0), {0.0, 0.7, 0.0}, 1);
  CHECK(v.conclusion == ObstructionConclusion::NoInvariantTensor);
  CHECK(v.factor_sum == 1.0);
  CHECK(v.residual == 0.0);
}

TEST_CASE("zero factor is never an obstruction") {
  const ConformalFlowSpec spec = flow_spec_H(1);
  const ScalarField zero = [](const Vec&) { return 0.0; };
  const ObstructionVerdict v = criterion_check(flow_map(spec, 1.0), zero, {0.0, 0.7, 0.0}, 1);
  CHECK(v.conclusion == ObstructionConclusion::Inconclusive);
  CHECK(v.factor_sum == 0.0);
}

TEST_CASE("periodic orbit of a quarter rotation sums the factor over four points") {
  const double c = std::cos(kTwoPi / 4.0), s = std::sin(kTwoPi / 4.0);
  const PointMap rot = [c, s](const Vec& p) {
    return Vec{c * p[0] - s * p[1], s * p[0] + c * p[1]};
  };
  const ScalarField f = [](const Vec& p) { return p[0] * p[0]; };
  // Orbit of (1, 0): (1,0), (0,1), (-1,0), (0,-1); sum of x^2 = 2.
  const ObstructionVerdict v = criterion_check(rot, f, {1.0, 0.0}, 4);
  CHECK(v.residual <= 1e-12);
  CHECK(std::abs(v.factor_sum - 2.0) <= 1e-12);
  CHECK(v.conclusion == ObstructionConclusion::NoInvariantTensor);

  CHECK_THROWS_AS(criterion_check(rot, f, {1.0, 0.0}, 0), std::invalid_argument);
}

TEST_CASE("conjugation by a translation transports the factor sum") {
  // Volume flow factor is position dependent; translations preserve the
  // volume form, so the conjugated map with factor f o psi must produce the
  // same orbit sums.
  const ConformalFlowSpec spec = flow_spec_volume(3);
  const double t = 1.0;
  const auto phi = flow_map(spec, t);
  const auto f = flow_factor(spec, t);

  const Vec shift{0.05, -0.03, 0.02};
  const PointMap conj = [phi, shift](const Vec& p) {
    return sub(phi(add(p, shift)), shift);
  };
  const ScalarField f_conj = [f, shift](const Vec& p) { return f(add(p, shift)); };

  // At the transported fixed point.
  const ObstructionVerdict direct = criterion_check(phi, f, {0.0, 0.0, 0.0}, 1);
  const ObstructionVerdict moved = criterion_check(conj, f_conj, scale(shift, -1.0), 1);
  CHECK(std::abs(direct.factor_sum - moved.factor_sum) <= 1e-8);
  CHECK(moved.conclusion == ObstructionConclusion::NoInvariantTensor);

  // Along a non-periodic orbit the sums still agree (period 3).
  const Vec x{0.2, 0.1, -0.15};
  const ObstructionVerdict d3 = criterion_check(phi, f, x, 3);
  const ObstructionVerdict m3 = criterion_check(conj, f_conj, sub(x, shift), 3);
  CHECK(std::abs(d3.factor_sum - m3.factor_sum) <= 1e-8);
}

TEST_CASE("inverse flow has the opposite factor at a fixed point") {
  const ConformalFlowSpec spec = flow_spec_H(2);
  const Vec fixed{0.0, 0.0, 0.4, -0.1, 0.0};
  const ObstructionVerdict fwd =
      criterion_check(flow_map(spec, 1.0), flow_factor(spec, 1.0), fixed, 1);
  const ObstructionVerdict bwd =
      criterion_check(flow_map(spec, -1.0), flow_factor(spec, -1.0), fixed, 1);
  CHECK(fwd.factor_sum == doctest::Approx(-bwd.factor_sum).epsilon(1e-14));
}

TEST_CASE("an exact coboundary factor is never convicted at periodic points") {
  const ConformalFlowSpec spec = flow_spec_F(1);
  const auto phi = flow_map(spec, 1.0);
  WeylSampler sampler(4, 99);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec c = sampler.cube_point(trial);
    const ScalarField g = [c](const Vec& p) {
      return c[0] * std::sin(p[0]) + c[1] * std::cos(p[1] * p[2]) + c[2] * p[2] +
             c[3] * p[0] * p[1];
    };
    const ScalarField factor = [g, phi](const Vec& p) { return g(p) - g(phi(p)); };
    // The origin is an exact fixed point; the telescoped sum must vanish.
    const ObstructionVerdict v = criterion_check(phi, factor, {0.0, 0.0, 0.0}, 1);
    CHECK(v.conclusion == ObstructionConclusion::Inconclusive);
    CHECK(std::abs(v.factor_sum) <= 1e-14);

    // Near-fixed points within tolerance: the sum stays below factor_tol.
    const Vec near{1e-9, -1e-9, 5e-10};
    const ObstructionVerdict vn = criterion_check(phi, factor, near, 1);
    CHECK(std::abs(vn.factor_sum) <= kDefaultFactorTol);
    CHECK(vn.conclusion == ObstructionConclusion::Inconclusive);
  }
}
