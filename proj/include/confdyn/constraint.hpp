#pragma once

// Necessary condition for e^f alpha to be diffeomorphic to alpha on a compact
// contact manifold: with mu the normalized alpha ^ (d alpha)^n volume, the
// pullback identity phi^*(alpha ^ (d alpha)^n) = e^{(n+1)f} alpha ^ (d alpha)^n
// and the change of variables force the mu-average of e^{(n+1)f} to equal 1;
// Jensen then forces avg(f) <= 0. Checked by quadrature on the 3-torus.

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "confdyn/errors.hpp"
#include "confdyn/linalg.hpp"

namespace confdyn {

// Real samples on the uniform periodic grid of [0,1)^3, row-major in
// (ix, iy, iz) with point coordinates (ix/N1, iy/N2, iz/N3).
class GridFunction {
 public:
  GridFunction(std::array<int, 3> resolution, std::vector<double> values);

  static GridFunction from_function(std::array<int, 3> resolution,
                                    const std::function<double(double, double, double)>& f);
  // CSV rows "x_index,y_index,z_index,value"; every grid site must appear
  // exactly once.
  static GridFunction from_csv(std::istream& in, std::array<int, 3> resolution);

  const std::array<int, 3>& resolution() const { return res_; }
  const std::vector<double>& values() const { return values_; }
  double at(int ix, int iy, int iz) const;
  Vec grid_point(int ix, int iy, int iz) const;

 private:
  std::array<int, 3> res_;
  std::vector<double> values_;
};

// Contact form on the unit-cube chart of T^3 together with the density of
// alpha ^ (d alpha)^n against dx ^ dy ^ dz.
struct ContactModel {
  int n = 1;  // half-dimension parameter; the average uses exponent n + 1
  std::function<Vec(const Vec&)> form;       // covector (dx, dy, dz components)
  std::function<double(const Vec&)> density;

  // alpha = cos(2 pi z) dx + sin(2 pi z) dy; its density is the constant
  // -2 pi, computed here from the form by finite differences like any other.
  static ContactModel standard_t3();

  // Any 1-form given pointwise; d alpha via central differences (step 1e-5).
  static ContactModel from_form(std::function<Vec(const Vec&)> form, int n = 1);

  // Conformal rescaling alpha -> e^g alpha: the density picks up e^{(n+1)g}
  // exactly (the dg ^ alpha ^ ... terms cancel in the top wedge).
  ContactModel rescaled(const std::function<double(const Vec&)>& g) const;
};

// Density at p; throws DegenerateContactForm when |density| < 1e-10 (alpha
// fails the contact condition there).
double canonical_density(const ContactModel& model, const Vec& p);

enum class ConstraintVerdict { NecessaryConditionHolds, Violated };

const char* to_string(ConstraintVerdict v);

struct AverageReport {
  double average = 0.0;  // A = integral of e^{(n+1)f} d mu
  double tol = 0.0;
  ConstraintVerdict verdict = ConstraintVerdict::NecessaryConditionHolds;
};

struct JensenReport {
  double average_f = 0.0;  // mu-average of f
  double min_f = 0.0;
  double max_f = 0.0;
  double tol = 0.0;
  bool positive_average = false;      // avg(f) > tol
  bool nonpositive_somewhere_negative = false;  // f <= 0 everywhere, < -tol somewhere
  ConstraintVerdict verdict = ConstraintVerdict::NecessaryConditionHolds;
};

// A = sum_g d_g e^{(n+1) f_g} / sum_g d_g over the periodic grid (trapezoid
// rule = equal-weight mean, spectrally accurate for smooth periodic f).
// Verdict is NecessaryConditionHolds iff |A - 1| <= tol; Violated certifies
// e^f alpha is not diffeomorphic to alpha.
AverageReport average_check(const GridFunction& f, const ContactModel& model,
                            double tol = 1e-8);

// Violated when avg(f) > tol, or when f <= 0 everywhere yet f < -tol
// somewhere (either clause already contradicts average value 1).
JensenReport jensen_check(const GridFunction& f, const ContactModel& model,
                          double tol = 1e-8);

}  // namespace confdyn
