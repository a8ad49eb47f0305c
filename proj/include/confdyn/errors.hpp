#pragma once

#include <stdexcept>
#include <string>

namespace confdyn {

// A coboundary equation f = g - g∘R has no solution when f has nonzero mean:
// Birkhoff sums of f then grow linearly.
struct NonzeroMean : std::runtime_error {
  explicit NonzeroMean(double mean)
      : std::runtime_error("nonzero mean coefficient: |f^(0)| = " + std::to_string(mean)),
        mean_value(mean) {}
  double mean_value;
};

// |1 - e^{2*pi*i*n*theta}| fell below the requested floor; the division is
// ill-conditioned at this frequency. Caller must raise precision or reject.
struct SmallDenominator : std::runtime_error {
  SmallDenominator(int n, double magnitude)
      : std::runtime_error("small denominator at frequency n = " + std::to_string(n) +
                           " (|1 - e^{2 pi i n theta}| = " + std::to_string(magnitude) + ")"),
        frequency(n), denominator_magnitude(magnitude) {}
  int frequency;
  double denominator_magnitude;
};

struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct NotRealValued : std::runtime_error {
  explicit NotRealValued(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct StepTooLarge : std::runtime_error {
  explicit StepTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct BadRadii : std::runtime_error {
  explicit BadRadii(const std::string& what) : std::runtime_error(what) {}
};

// |det Dphi| below threshold signals a broken flow map: diffeomorphisms are
// invertible, so a vanishing Jacobian determinant is never legitimate.
struct SingularJacobian : std::runtime_error {
  explicit SingularJacobian(double det)
      : std::runtime_error("singular Jacobian: |det| = " + std::to_string(det)),
        determinant(det) {}
  double determinant;
};

struct ResolutionMismatch : std::runtime_error {
  explicit ResolutionMismatch(const std::string& what) : std::runtime_error(what) {}
};

// alpha ∧ (d alpha)^n vanished somewhere: the form fails the contact condition.
struct DegenerateContactForm : std::runtime_error {
  explicit DegenerateContactForm(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace confdyn
