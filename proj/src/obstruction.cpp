#include "confdyn/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "confdyn/flows.hpp"

namespace confdyn {

const char* to_string(ObstructionConclusion c) {
  switch (c) {
    case ObstructionConclusion::NoInvariantTensor: return "NoInvariantTensor";
    case ObstructionConclusion::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

FixedPointSearch find_fixed_points(const PointMap& map, const std::vector<Vec>& seeds,
                                   double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");

  FixedPointSearch result;
  result.outcomes.reserve(seeds.size());

  for (const Vec& seed : seeds) {
    Vec x = seed;
    SeedOutcome outcome = SeedOutcome::NoConvergence;
    for (int it = 0; it < max_iter; ++it) {
      const Vec gap = sub(map(x), x);
      const double fd = 1e-6 * (1.0 + norm2(x));
      Mat a = finite_difference_jacobian(map, x, fd);
      for (int i = 0; i < a.rows(); ++i) a(i, i) -= 1.0;  // Dphi - I
      // Pivot floor above the differencing noise (~1e-10), scaled to the
      // matrix, so an exactly-neutral direction is not mistaken for a
      // well-conditioned one.
      double mag = 0.0;
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) mag = std::max(mag, std::abs(a(i, j)));
      Vec step;
      if (!solve_linear(a, scale(gap, -1.0), step, 1e-8 * (1.0 + mag))) {
        // Non-isolated fixed set (a fixed line, or the identity): Newton has
        // no certificate to give here even when the seed itself is fixed.
        outcome = SeedOutcome::SingularNewtonStep;
        break;
      }
      if (norm2(gap) <= tol) {
        outcome = SeedOutcome::Converged;
        break;
      }
      x = add(x, step);
    }

    result.outcomes.push_back(outcome);
    switch (outcome) {
      case SeedOutcome::Converged: {
        bool duplicate = false;
        for (const Vec& q : result.points)
          if (norm2(sub(q, x)) <= 10.0 * tol) duplicate = true;
        if (!duplicate) result.points.push_back(x);
        break;
      }
      case SeedOutcome::NoConvergence:
        ++result.no_convergence_count;
        break;
      case SeedOutcome::SingularNewtonStep:
        ++result.singular_count;
        break;
    }
  }
  return result;
}

ObstructionVerdict criterion_check(const PointMap& map, const ScalarField& factor,
                                   const Vec& x, int m, double point_tol,
                                   double factor_tol) {
  if (m < 1) throw std::invalid_argument("period m must be >= 1");

  ObstructionVerdict v;
  v.point = x;
  v.period = m;

  Vec orbit = x;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    sum += factor(orbit);
    orbit = map(orbit);
  }
  v.factor_sum = sum;
  v.residual = norm2(sub(orbit, x));
  v.conclusion = (v.residual <= point_tol && std::abs(v.factor_sum) > factor_tol)
                     ? ObstructionConclusion::NoInvariantTensor
                     : ObstructionConclusion::Inconclusive;
  return v;
}

}  // namespace confdyn
