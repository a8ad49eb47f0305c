#include "confdyn/constraint.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "confdyn/fourier.hpp"  // kTwoPi
#include "confdyn/sampling.hpp"

namespace confdyn {

GridFunction::GridFunction(std::array<int, 3> resolution, std::vector<double> values)
    : res_(resolution), values_(std::move(values)) {
  for (int r : res_)
    if (r < 8) throw std::invalid_argument("grid resolution components must be >= 8");
  const std::size_t expected = static_cast<std::size_t>(res_[0]) * res_[1] * res_[2];
  if (values_.size() != expected)
    throw ResolutionMismatch("grid has " + std::to_string(values_.size()) +
                             " values, resolution requires " + std::to_string(expected));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
}

GridFunction GridFunction::from_function(
    std::array<int, 3> resolution, const std::function<double(double, double, double)>& f) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(resolution[0]) * resolution[1] * resolution[2]);
  for (int ix = 0; ix < resolution[0]; ++ix)
    for (int iy = 0; iy < resolution[1]; ++iy)
      for (int iz = 0; iz < resolution[2]; ++iz)
        values.push_back(f(static_cast<double>(ix) / resolution[0],
                           static_cast<double>(iy) / resolution[1],
                           static_cast<double>(iz) / resolution[2]));
  return GridFunction(resolution, std::move(values));
}

GridFunction GridFunction::from_csv(std::istream& in, std::array<int, 3> resolution) {
  const std::size_t total = static_cast<std::size_t>(resolution[0]) * resolution[1] * resolution[2];
  std::vector<double> values(total, 0.0);
  std::vector<bool> seen(total, false);
  std::string line;
  std::size_t filled = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find("x_index") != std::string::npos) continue;  // header
    std::istringstream row(line);
    long ix, iy, iz;
    double v;
    char c1, c2, c3;
    if (!(row >> ix >> c1 >> iy >> c2 >> iz >> c3 >> v) || c1 != ',' || c2 != ',' || c3 != ',')
      throw std::invalid_argument("malformed CSV row: " + line);
    if (ix < 0 || ix >= resolution[0] || iy < 0 || iy >= resolution[1] || iz < 0 ||
        iz >= resolution[2])
      throw ResolutionMismatch("CSV index out of range for declared resolution: " + line);
    const std::size_t idx =
        (static_cast<std::size_t>(ix) * resolution[1] + static_cast<std::size_t>(iy)) *
            resolution[2] +
        static_cast<std::size_t>(iz);
    if (seen[idx]) throw std::invalid_argument("duplicate CSV grid site: " + line);
    seen[idx] = true;
    values[idx] = v;
    ++filled;
  }
  if (filled != total)
    throw ResolutionMismatch("CSV provided " + std::to_string(filled) + " of " +
                             std::to_string(total) + " grid sites");
  return GridFunction(resolution, std::move(values));
}

double GridFunction::at(int ix, int iy, int iz) const {
  return values_[(static_cast<std::size_t>(ix) * res_[1] + static_cast<std::size_t>(iy)) *
                     res_[2] +
                 static_cast<std::size_t>(iz)];
}

Vec GridFunction::grid_point(int ix, int iy, int iz) const {
  return {static_cast<double>(ix) / res_[0], static_cast<double>(iy) / res_[1],
          static_cast<double>(iz) / res_[2]};
}

namespace {

// alpha ^ (d alpha) density in dimension 3 from the covector field a:
// a . curl(a), with d alpha obtained by central differences.
double wedge_density_fd(const std::function<Vec(const Vec&)>& form, const Vec& p) {
  const double h = 1e-5;
  Mat par(3, 3);  // par(i, j) = d a_j / d x_i
  for (int i = 0; i < 3; ++i) {
    Vec hi = p, lo = p;
    hi[static_cast<std::size_t>(i)] += h;
    lo[static_cast<std::size_t>(i)] -= h;
    const Vec fh = form(hi), fl = form(lo);
    for (int j = 0; j < 3; ++j) par(i, j) = (fh[static_cast<std::size_t>(j)] -
                                             fl[static_cast<std::size_t>(j)]) / (2.0 * h);
  }
  const Vec a = form(p);
  const double b23 = par(1, 2) - par(2, 1);  // d alpha (e2, e3)
  const double b13 = par(0, 2) - par(2, 0);
  const double b12 = par(0, 1) - par(1, 0);
  return a[0] * b23 - a[1] * b13 + a[2] * b12;
}

}  // namespace

ContactModel ContactModel::standard_t3() {
  return from_form(
      [](const Vec& p) {
        return Vec{std::cos(kTwoPi * p[2]), std::sin(kTwoPi * p[2]), 0.0};
      },
      1);
}

ContactModel ContactModel::from_form(std::function<Vec(const Vec&)> form, int n) {
  ContactModel m;
  m.n = n;
  m.form = form;
  m.density = [form](const Vec& p) { return wedge_density_fd(form, p); };
  return m;
}

ContactModel ContactModel::rescaled(const std::function<double(const Vec&)>& g) const {
  ContactModel m;
  m.n = n;
  const auto base_form = form;
  const auto base_density = density;
  const int exponent = n + 1;
  m.form = [base_form, g](const Vec& p) {
    Vec a = base_form(p);
    const double s = std::exp(g(p));
    for (double& c : a) c *= s;
    return a;
  };
  m.density = [base_density, g, exponent](const Vec& p) {
    return std::exp(exponent * g(p)) * base_density(p);
  };
  return m;
}

double canonical_density(const ContactModel& model, const Vec& p) {
  const double d = model.density(p);
  if (std::abs(d) < 1e-10)
    throw DegenerateContactForm("alpha ^ (d alpha)^n density " + std::to_string(d) +
                                " vanishes near (" + std::to_string(p[0]) + ", " +
                                std::to_string(p[1]) + ", " + std::to_string(p[2]) + ")");
  return d;
}

const char* to_string(ConstraintVerdict v) {
  switch (v) {
    case ConstraintVerdict::NecessaryConditionHolds: return "NecessaryConditionHolds";
    case ConstraintVerdict::Violated: return "Violated";
  }
  return "Violated";
}

namespace {

struct WeightedSums {
  std::vector<double> density;   // d_g per site, reduction order fixed
  std::vector<double> weighted;  // d_g * integrand_g
};

// Evaluates density and integrand site by site; the two vectors are reduced
// pairwise so the quadrature is bit-reproducible.
template <typename F>
WeightedSums tabulate(const GridFunction& f, const ContactModel& model, F integrand) {
  const auto& res = f.resolution();
  const std::size_t total = static_cast<std::size_t>(res[0]) * res[1] * res[2];
  WeightedSums s;
  s.density.reserve(total);
  s.weighted.reserve(total);
  for (int ix = 0; ix < res[0]; ++ix)
    for (int iy = 0; iy < res[1]; ++iy)
      for (int iz = 0; iz < res[2]; ++iz) {
        const double d = canonical_density(model, f.grid_point(ix, iy, iz));
        s.density.push_back(d);
        s.weighted.push_back(d * integrand(f.at(ix, iy, iz)));
      }
  return s;
}

}  // namespace

AverageReport average_check(const GridFunction& f, const ContactModel& model, double tol) {
  const int exponent = model.n + 1;
  const WeightedSums s =
      tabulate(f, model, [exponent](double v) { return std::exp(exponent * v); });
  AverageReport rep;
  rep.tol = tol;
  rep.average = pairwise_sum(s.weighted) / pairwise_sum(s.density);
  rep.verdict = std::abs(rep.average - 1.0) <= tol ? ConstraintVerdict::NecessaryConditionHolds
                                                   : ConstraintVerdict::Violated;
  return rep;
}

JensenReport jensen_check(const GridFunction& f, const ContactModel& model, double tol) {
  const WeightedSums s = tabulate(f, model, [](double v) { return v; });
  JensenReport rep;
  rep.tol = tol;
  rep.average_f = pairwise_sum(s.weighted) / pairwise_sum(s.density);
  rep.min_f = f.values()[0];
  rep.max_f = f.values()[0];
  for (double v : f.values()) {
    rep.min_f = std::min(rep.min_f, v);
    rep.max_f = std::max(rep.max_f, v);
  }
  rep.positive_average = rep.average_f > tol;
  rep.nonpositive_somewhere_negative = rep.max_f <= 0.0 && rep.min_f < -tol;
  rep.verdict = (rep.positive_average || rep.nonpositive_somewhere_negative)
                    ? ConstraintVerdict::Violated
                    : ConstraintVerdict::NecessaryConditionHolds;
  return rep;
}

}  // namespace confdyn
