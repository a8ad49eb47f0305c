#pragma once

// Fixed/periodic-point obstruction: if phi^m(x) = x and the conformal factor
// summed along the orbit is nonzero, then no tensor in the conformal class is
// preserved by phi — the cohomological equation f = g - g∘phi telescopes to
// zero along a periodic orbit, so a nonzero orbit sum rules every g out.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "confdyn/linalg.hpp"

namespace confdyn {

using PointMap = std::function<Vec(const Vec&)>;
using ScalarField = std::function<double(const Vec&)>;

inline constexpr double kDefaultPointTol = 1e-8;
inline constexpr double kDefaultFactorTol = 1e-6;

enum class ObstructionConclusion { NoInvariantTensor, Inconclusive };

const char* to_string(ObstructionConclusion c);

struct ObstructionVerdict {
  Vec point;
  int period = 1;
  double factor_sum = 0.0;           // sum_{i<m} f(phi^i(x))
  double residual = 0.0;             // |phi^m(x) - x|
  ObstructionConclusion conclusion = ObstructionConclusion::Inconclusive;
};

enum class SeedOutcome { Converged, NoConvergence, SingularNewtonStep };

struct FixedPointSearch {
  std::vector<Vec> points;           // converged, deduplicated, in seed order
  std::vector<SeedOutcome> outcomes; // one per seed, in input order
  int no_convergence_count = 0;
  int singular_count = 0;            // I - Dphi numerically singular
                                     // (non-isolated fixed set, e.g. a fixed line)
};

// Newton iteration on phi(x) - x with a central-difference Jacobian of phi.
// Seeds that hit a singular Newton step are reported, not fatal: a singular
// I - Dphi signals a non-isolated fixed set (a fixed line, or the identity),
// and the singularity probe runs before convergence is declared, so returned
// points are certified isolated. Known exact fixed points on a fixed line
// should be fed straight to criterion_check instead. Seeds that fail to
// converge within max_iter are dropped and counted. Accepted points satisfy
// |phi(x) - x| <= tol and are deduplicated at distance 10*tol.
FixedPointSearch find_fixed_points(const PointMap& map, const std::vector<Vec>& seeds,
                                   double tol, int max_iter = 50);

// Evaluates the obstruction at x for period m: residual |phi^m(x) - x| and
// factor_sum over the forward orbit. NoInvariantTensor requires both
// residual <= point_tol and |factor_sum| > factor_tol; everything else is
// Inconclusive.
ObstructionVerdict criterion_check(const PointMap& map, const ScalarField& factor,
                                   const Vec& x, int m,
                                   double point_tol = kDefaultPointTol,
                                   double factor_tol = kDefaultFactorTol);

}  // namespace confdyn
