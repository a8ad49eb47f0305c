#include "confdyn/flows.hpp"

#include <cmath>
#include <stdexcept>

#include "confdyn/fourier.hpp"  // kTwoPi
#include "confdyn/sampling.hpp"

namespace confdyn {

const char* to_string(TensorKind k) {
  switch (k) {
    case TensorKind::contact_form: return "contact_form";
    case TensorKind::symplectic_form: return "symplectic_form";
    case TensorKind::volume_form: return "volume_form";
  }
  return "volume_form";
}

double TensorValue::max_abs_diff(const TensorValue& other) const {
  if (kind != other.kind) throw DimensionMismatch("tensor kinds differ");
  switch (kind) {
    case TensorKind::contact_form: {
      if (covector.size() != other.covector.size())
        throw DimensionMismatch("covector lengths differ");
      double m = 0.0;
      for (std::size_t i = 0; i < covector.size(); ++i)
        m = std::max(m, std::abs(covector[i] - other.covector[i]));
      return m;
    }
    case TensorKind::symplectic_form:
      return matrix.max_abs_diff(other.matrix);
    case TensorKind::volume_form:
      return std::abs(density - other.density);
  }
  return 0.0;
}

TensorValue TensorValue::scaled(double s) const {
  TensorValue r = *this;
  switch (kind) {
    case TensorKind::contact_form:
      for (double& c : r.covector) c *= s;
      break;
    case TensorKind::symplectic_form:
      for (int i = 0; i < r.matrix.rows(); ++i)
        for (int j = 0; j < r.matrix.cols(); ++j) r.matrix(i, j) *= s;
      break;
    case TensorKind::volume_form:
      r.density *= s;
      break;
  }
  return r;
}

bool TensorValue::antisymmetric(double tol) const {
  if (kind != TensorKind::symplectic_form) return true;
  for (int i = 0; i < matrix.rows(); ++i)
    for (int j = 0; j < matrix.cols(); ++j)
      if (std::abs(matrix(i, j) + matrix(j, i)) > tol) return false;
  return true;
}

Vec standard_contact_covector(const Vec& p) {
  const int dim = static_cast<int>(p.size());
  if (dim < 3 || dim % 2 == 0)
    throw DimensionMismatch("contact form needs odd dimension >= 3");
  const int n = (dim - 1) / 2;
  Vec a(p.size(), 0.0);
  for (int i = 0; i < n; ++i) a[i] = -p[n + i];  // dx_i component: -y_i
  a[2 * n] = 1.0;                                // dz component
  return a;
}

Mat standard_symplectic_matrix(int n) {
  Mat omega(2 * n, 2 * n);
  // omega(u, v) = u^T Omega v with dp_i ^ dq_i pairing p-rows to q-columns.
  for (int i = 0; i < n; ++i) {
    omega(n + i, i) = 1.0;
    omega(i, n + i) = -1.0;
  }
  return omega;
}

TensorValue standard_tensor(TensorKind kind, int dim, const Vec& p) {
  TensorValue v;
  v.kind = kind;
  switch (kind) {
    case TensorKind::contact_form:
      v.covector = standard_contact_covector(p);
      break;
    case TensorKind::symplectic_form:
      if (dim % 2 != 0) throw DimensionMismatch("symplectic form needs even dimension");
      v.matrix = standard_symplectic_matrix(dim / 2);
      break;
    case TensorKind::volume_form:
      v.density = 1.0;
      break;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Cutoff and profiles

namespace {

// s(x) = exp(-1/x) for x > 0, extended by 0: the standard mollifier piece.
double mollifier(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double mollifier_deriv(double x) {
  return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}

}  // namespace

SmoothBump::SmoothBump(double r_inner, double r_outer)
    : r_inner_(r_inner), r_outer_(r_outer) {
  if (!(0.0 < r_inner && r_inner < r_outer))
    throw BadRadii("need 0 < r_inner < r_outer");
}

double SmoothBump::operator()(double r) const {
  if (r <= r_inner_) return 1.0;
  if (r >= r_outer_) return 0.0;
  const double w = r_outer_ - r_inner_;
  const double u = mollifier((r_outer_ - r) / w);
  const double v = mollifier((r - r_inner_) / w);
  return u / (u + v);
}

double SmoothBump::deriv(double r) const {
  if (r <= r_inner_ || r >= r_outer_) return 0.0;
  const double w = r_outer_ - r_inner_;
  const double a = (r_outer_ - r) / w;
  const double b = (r - r_inner_) / w;
  const double u = mollifier(a), v = mollifier(b);
  const double du = -mollifier_deriv(a) / w;
  const double dv = mollifier_deriv(b) / w;
  const double s = u + v;
  return (du * v - u * dv) / (s * s);
}

SmoothBump bump_cutoff(double r_inner, double r_outer) {
  return SmoothBump(r_inner, r_outer);
}

ScalarProfile default_volume_profile(int n, double r_inner, double r_outer) {
  const SmoothBump chi(r_inner, r_outer);
  const double inv_n = 1.0 / static_cast<double>(n);
  ScalarProfile p;
  p.value = [chi, inv_n](double r) { return r * inv_n * chi(std::abs(r)); };
  p.deriv = [chi, inv_n](double r) {
    const double ar = std::abs(r);
    const double sgn = r < 0.0 ? -1.0 : 1.0;
    return inv_n * chi(ar) + r * inv_n * chi.deriv(ar) * sgn;
  };
  return p;
}

ScalarProfile linear_volume_profile(int n) {
  const double inv_n = 1.0 / static_cast<double>(n);
  return {[inv_n](double r) { return r * inv_n; },
          [inv_n](double) { return inv_n; }};
}

// ---------------------------------------------------------------------------
// Hamiltonians and the contact vector field

HamiltonianSpec HamiltonianSpec::with_fd_partials(int dim, std::function<double(const Vec&)> h) {
  HamiltonianSpec s;
  s.dim = dim;
  s.value = h;
  auto partial = [h](const Vec& p, int coord) {
    const double step = 1e-5 * (1.0 + norm2(p));
    Vec lo = p, hi = p;
    lo[coord] -= step;
    hi[coord] += step;
    return (h(hi) - h(lo)) / (2.0 * step);
  };
  const int n = (dim - 1) / 2;
  s.d_x = [partial](int i, const Vec& p) { return partial(p, i); };
  s.d_y = [partial, n](int i, const Vec& p) { return partial(p, n + i); };
  s.d_z = [partial, n](const Vec& p) { return partial(p, 2 * n); };
  return s;
}

HamiltonianSpec hamiltonian_H(int n) {
  HamiltonianSpec s;
  s.dim = 2 * n + 1;
  s.value = [n](const Vec& p) {
    double xy = 0.0;
    for (int i = 0; i < n; ++i) xy += p[i] * p[n + i];
    return p[2 * n] - xy;
  };
  s.d_x = [n](int i, const Vec& p) { return -p[n + i]; };
  s.d_y = [](int i, const Vec& p) { return -p[i]; };
  s.d_z = [](const Vec&) { return 1.0; };
  return s;
}

HamiltonianSpec hamiltonian_F(int n) {
  HamiltonianSpec s;
  s.dim = 2 * n + 1;
  s.value = [n](const Vec& p) {
    double xy = 0.0;
    for (int i = 0; i < n; ++i) xy += p[i] * p[n + i];
    return 2.0 * p[2 * n] - xy;
  };
  s.d_x = [n](int i, const Vec& p) { return -p[n + i]; };
  s.d_y = [](int i, const Vec& p) { return -p[i]; };
  s.d_z = [](const Vec&) { return 2.0; };
  return s;
}

Vec contact_vector_field(const HamiltonianSpec& h, const Vec& p) {
  const int dim = static_cast<int>(p.size());
  if (dim < 3 || dim % 2 == 0)
    throw DimensionMismatch("contact vector field needs odd dimension >= 3");
  if (dim != h.dim) throw DimensionMismatch("Hamiltonian dimension does not match point");
  const int n = (dim - 1) / 2;

  Vec x(p.size(), 0.0);
  const double dz = h.d_z(p);
  double y_dy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dyi = h.d_y(i, p);
    x[i] = -dyi;
    x[n + i] = h.d_x(i, p) + p[n + i] * dz;
    y_dy += p[n + i] * dyi;
  }
  x[2 * n] = h.value(p) - y_dy;
  return x;
}

// ---------------------------------------------------------------------------
// Named flows

namespace {

void require_dim(const Vec& p, int dim, const char* what) {
  if (static_cast<int>(p.size()) != dim)
    throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(dim) +
                            ", got " + std::to_string(p.size()));
}

void require_odd(const Vec& p, const char* what) {
  if (p.size() < 3 || p.size() % 2 == 0)
    throw DimensionMismatch(std::string(what) + ": expected odd dimension >= 3");
}

}  // namespace

Vec flow_H(double t, const Vec& p) {
  require_odd(p, "flow_H");
  const int n = static_cast<int>(p.size() - 1) / 2;
  const double et = std::exp(t);
  Vec q = p;
  for (int i = 0; i < n; ++i) q[i] *= et;
  q[2 * n] *= et;
  return q;
}

Vec flow_F(double t, const Vec& p) {
  require_odd(p, "flow_F");
  const int n = static_cast<int>(p.size() - 1) / 2;
  const double et = std::exp(t);
  const double e2t = std::exp(2.0 * t);
  Vec q = p;
  for (int i = 0; i < 2 * n; ++i) q[i] *= et;
  q[2 * n] *= e2t;
  return q;
}

std::pair<Vec, Vec> liouville_flow_cotangent(double t, const Vec& q, const Vec& p) {
  if (q.size() != p.size()) throw DimensionMismatch("liouville flow: |q| != |p|");
  const double et = std::exp(t);
  Vec pt = p;
  for (double& c : pt) c *= et;
  return {q, pt};
}

ConformalFlowSpec flow_spec_H(int n) {
  ConformalFlowSpec s;
  s.name = "H";
  s.ambient_dim = 2 * n + 1;
  s.tensor_kind = TensorKind::contact_form;
  s.exact_flow = [](double t, const Vec& p) { return flow_H(t, p); };
  const HamiltonianSpec h = hamiltonian_H(n);
  s.vector_field = [h](const Vec& p) { return contact_vector_field(h, p); };
  s.expected_factor = [](double t, const Vec&) { return t; };
  s.jacobian = [n](double t, const Vec&) {
    const double et = std::exp(t);
    Vec d(2 * n + 1, 1.0);
    for (int i = 0; i < n; ++i) d[i] = et;
    d[2 * n] = et;
    return Mat::diagonal(d);
  };
  const int dim = s.ambient_dim;
  s.tensor = [dim](const Vec& p) { return standard_tensor(TensorKind::contact_form, dim, p); };
  s.jacobian_mode = JacobianMode::analytic;
  return s;
}

ConformalFlowSpec flow_spec_F(int n) {
  ConformalFlowSpec s;
  s.name = "F";
  s.ambient_dim = 2 * n + 1;
  s.tensor_kind = TensorKind::contact_form;
  s.exact_flow = [](double t, const Vec& p) { return flow_F(t, p); };
  const HamiltonianSpec h = hamiltonian_F(n);
  s.vector_field = [h](const Vec& p) { return contact_vector_field(h, p); };
  s.expected_factor = [](double t, const Vec&) { return 2.0 * t; };
  s.jacobian = [n](double t, const Vec&) {
    Vec d(2 * n + 1, std::exp(t));
    d[2 * n] = std::exp(2.0 * t);
    return Mat::diagonal(d);
  };
  const int dim = s.ambient_dim;
  s.tensor = [dim](const Vec& p) { return standard_tensor(TensorKind::contact_form, dim, p); };
  s.jacobian_mode = JacobianMode::analytic;
  return s;
}

ConformalFlowSpec flow_spec_liouville_cotangent(int n) {
  ConformalFlowSpec s;
  s.name = "liouville";
  s.ambient_dim = 2 * n;
  s.tensor_kind = TensorKind::symplectic_form;
  s.exact_flow = [n](double t, const Vec& p) {
    require_dim(p, 2 * n, "liouville flow");
    const double et = std::exp(t);
    Vec q = p;
    for (int i = n; i < 2 * n; ++i) q[i] *= et;
    return q;
  };
  s.vector_field = [n](const Vec& p) {
    require_dim(p, 2 * n, "liouville field");
    Vec v(p.size(), 0.0);
    for (int i = n; i < 2 * n; ++i) v[i] = p[i];  // p d/dp
    return v;
  };
  s.expected_factor = [](double t, const Vec&) { return t; };
  s.jacobian = [n](double t, const Vec&) {
    Vec d(2 * n, 1.0);
    for (int i = n; i < 2 * n; ++i) d[i] = std::exp(t);
    return Mat::diagonal(d);
  };
  const int dim = s.ambient_dim;
  s.tensor = [dim](const Vec& p) {
    return standard_tensor(TensorKind::symplectic_form, dim, p);
  };
  s.jacobian_mode = JacobianMode::analytic;
  return s;
}

ConformalFlowSpec flow_spec_volume(int n, ScalarProfile profile, double ode_step) {
  if (!profile.value) profile = default_volume_profile(n);
  ConformalFlowSpec s;
  s.name = "volume";
  s.ambient_dim = n;
  s.tensor_kind = TensorKind::volume_form;
  auto steps_for = [ode_step](double t) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::abs(t) / ode_step)));
  };
  s.exact_flow = [profile, steps_for](double t, const Vec& p) {
    return volume_flow(t, p, profile, steps_for(t)).first;
  };
  s.vector_field = [profile, n](const Vec& p) {
    require_dim(p, n, "volume field");
    Vec v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = profile.value(p[i]);
    return v;
  };
  s.expected_factor = [profile, steps_for](double t, const Vec& p) {
    return volume_flow(t, p, profile, steps_for(t)).second;
  };
  const int dim = n;
  s.tensor = [dim](const Vec& p) { return standard_tensor(TensorKind::volume_form, dim, p); };
  s.jacobian_mode = JacobianMode::finite_difference;
  return s;
}

ConformalFlowSpec flow_spec_reeb_t3() {
  ConformalFlowSpec s;
  s.name = "reeb";
  s.ambient_dim = 3;
  s.tensor_kind = TensorKind::contact_form;
  s.exact_flow = [](double t, const Vec& p) {
    require_dim(p, 3, "reeb flow");
    return Vec{p[0] + t * std::cos(kTwoPi * p[2]), p[1] + t * std::sin(kTwoPi * p[2]), p[2]};
  };
  s.vector_field = [](const Vec& p) {
    require_dim(p, 3, "reeb field");
    return Vec{std::cos(kTwoPi * p[2]), std::sin(kTwoPi * p[2]), 0.0};
  };
  s.expected_factor = [](double, const Vec&) { return 0.0; };
  s.jacobian = [](double t, const Vec& p) {
    Mat m = Mat::identity(3);
    m(0, 2) = -kTwoPi * t * std::sin(kTwoPi * p[2]);
    m(1, 2) = kTwoPi * t * std::cos(kTwoPi * p[2]);
    return m;
  };
  s.tensor = [](const Vec& p) {
    TensorValue v;
    v.kind = TensorKind::contact_form;
    v.covector = {std::cos(kTwoPi * p[2]), std::sin(kTwoPi * p[2]), 0.0};
    return v;
  };
  s.jacobian_mode = JacobianMode::analytic;
  return s;
}

ConformalFlowSpec flow_spec_by_name(const std::string& name, int n) {
  if (name == "H") return flow_spec_H(n);
  if (name == "F") return flow_spec_F(n);
  if (name == "liouville") return flow_spec_liouville_cotangent(n);
  if (name == "volume") return flow_spec_volume(n);
  if (name == "reeb") return flow_spec_reeb_t3();
  throw std::invalid_argument("unknown flow '" + name + "'");
}

// ---------------------------------------------------------------------------
// Volume flow integration

std::pair<Vec, double> volume_flow(double t, const Vec& x, const ScalarProfile& profile,
                                   std::int64_t steps) {
  const std::int64_t floor_steps =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::abs(t) / 1e-3)));
  if (steps < floor_steps)
    throw StepTooLarge("need at least " + std::to_string(floor_steps) + " steps for t = " +
                       std::to_string(t));

  const std::size_t n = x.size();
  // Augmented state (x, f) with x_i' = rho(x_i), f' = sum_i rho'(x_i).
  auto deriv = [&](const Vec& state) {
    Vec d(n + 1, 0.0);
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = profile.value(state[i]);
      lambda += profile.deriv(state[i]);
    }
    d[n] = lambda;
    return d;
  };

  Vec state(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) state[i] = x[i];
  const double h = t / static_cast<double>(steps);
  for (std::int64_t s = 0; s < steps; ++s) {
    const Vec k1 = deriv(state);
    const Vec k2 = deriv(add(state, scale(k1, 0.5 * h)));
    const Vec k3 = deriv(add(state, scale(k2, 0.5 * h)));
    const Vec k4 = deriv(add(state, scale(k3, h)));
    for (std::size_t i = 0; i <= n; ++i)
      state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  Vec endpoint(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(n));
  return {endpoint, state[n]};
}

// ---------------------------------------------------------------------------
// Pullbacks

Mat finite_difference_jacobian(const std::function<Vec(const Vec&)>& map, const Vec& p,
                               double step) {
  if (!(step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  const Vec base = map(p);
  const int rows = static_cast<int>(base.size());
  const int cols = static_cast<int>(p.size());
  Mat j(rows, cols);
  for (int c = 0; c < cols; ++c) {
    Vec hi = p, lo = p;
    hi[c] += step;
    lo[c] -= step;
    const Vec fh = map(hi), fl = map(lo);
    for (int r = 0; r < rows; ++r) j(r, c) = (fh[r] - fl[r]) / (2.0 * step);
  }
  return j;
}

TensorValue pullback_form(const ConformalFlowSpec& flow, double t, const Vec& p,
                          double fd_step) {
  if (!flow.exact_flow) throw std::invalid_argument("flow '" + flow.name + "' has no map");
  require_dim(p, flow.ambient_dim, "pullback_form");

  Mat dphi;
  if (flow.jacobian_mode == JacobianMode::analytic && flow.jacobian) {
    dphi = flow.jacobian(t, p);
  } else {
    dphi = finite_difference_jacobian(
        [&](const Vec& q) { return flow.exact_flow(t, q); }, p, fd_step);
  }

  const double det = determinant(dphi);
  if (std::abs(det) < 1e-12) throw SingularJacobian(det);

  const Vec image = flow.exact_flow(t, p);
  const TensorValue tau = flow.tensor(image);

  TensorValue out;
  out.kind = flow.tensor_kind;
  switch (flow.tensor_kind) {
    case TensorKind::contact_form:
      out.covector = dphi.apply_transposed(tau.covector);
      break;
    case TensorKind::symplectic_form:
      out.matrix = dphi.transpose().mul(tau.matrix.mul(dphi));
      break;
    case TensorKind::volume_form:
      out.density = det * tau.density;
      break;
  }
  return out;
}

PullbackReport verify_conformal_factor(const ConformalFlowSpec& flow, double t,
                                       std::int64_t samples, std::uint64_t seed) {
  if (!flow.expected_factor)
    throw std::invalid_argument("flow '" + flow.name + "' declares no expected factor");

  PullbackReport rep;
  rep.flow_name = flow.name;
  rep.t = t;
  rep.dim = flow.ambient_dim;
  rep.sample_count = samples;
  rep.seed = seed;
  rep.tolerance = flow.jacobian_mode == JacobianMode::analytic ? kAnalyticPullbackTol
                                                               : kFiniteDifferencePullbackTol;

  const WeylSampler sampler(flow.ambient_dim, seed);
  double max_residual = 0.0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const Vec p = sampler.cube_point(static_cast<std::uint64_t>(k));
    const TensorValue pulled = pullback_form(flow, t, p);
    const TensorValue expected =
        flow.tensor(p).scaled(std::exp(flow.expected_factor(t, p)));
    max_residual = std::max(max_residual, pulled.max_abs_diff(expected));
  }
  rep.max_residual = max_residual;
  rep.pass = max_residual <= rep.tolerance;
  return rep;
}

std::pair<double, double> flow_spec_consistency(const ConformalFlowSpec& flow,
                                                const std::vector<Vec>& samples) {
  double id_residual = 0.0;
  double field_residual = 0.0;
  const double h = 1e-6;
  for (const Vec& p : samples) {
    if (flow.exact_flow) {
      const Vec q = flow.exact_flow(0.0, p);
      for (std::size_t i = 0; i < p.size(); ++i)
        id_residual = std::max(id_residual, std::abs(q[i] - p[i]));
      if (flow.vector_field) {
        const Vec fwd = flow.exact_flow(h, p);
        const Vec bwd = flow.exact_flow(-h, p);
        const Vec x = flow.vector_field(p);
        for (std::size_t i = 0; i < p.size(); ++i) {
          const double dt = (fwd[i] - bwd[i]) / (2.0 * h);
          field_residual = std::max(field_residual, std::abs(dt - x[i]));
        }
      }
    }
  }
  return {id_residual, field_residual};
}

}  // namespace confdyn
