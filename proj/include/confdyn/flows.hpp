#pragma once

// Model flows rescaling a reference tensor: phi_t^* tau = e^{f_t} tau.
//
// The contact flows on R^{2n+1} and the cotangent Liouville flow are exact
// (closed-form maps with analytic Jacobians); the volume flow on R^n is
// integrated. pullback_form computes phi_t^* tau at a point from the Jacobian
// of the map and verify_conformal_factor compares it against e^{f_t} tau on a
// deterministic sample cloud.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "confdyn/errors.hpp"
#include "confdyn/linalg.hpp"

namespace confdyn {

enum class TensorKind { contact_form, symplectic_form, volume_form };

const char* to_string(TensorKind k);

// Value of the reference tensor at a point: a covector for a contact form,
// an antisymmetric matrix for a symplectic form, a density for a volume form.
struct TensorValue {
  TensorKind kind = TensorKind::volume_form;
  Vec covector;
  Mat matrix;
  double density = 1.0;

  double max_abs_diff(const TensorValue& other) const;
  TensorValue scaled(double s) const;

  // Symplectic components must be antisymmetric within `tol`.
  bool antisymmetric(double tol = 1e-14) const;
};

// Standard reference tensors: alpha = dz - sum y_i dx_i on R^{2n+1} with
// coordinates (x_1..x_n, y_1..y_n, z); omega = sum dp_i ^ dq_i on R^{2n} with
// coordinates (q, p); mu = dx_1 ^ ... ^ dx_n (density 1).
Vec standard_contact_covector(const Vec& p);
Mat standard_symplectic_matrix(int n);
TensorValue standard_tensor(TensorKind kind, int dim, const Vec& p);

// ---------------------------------------------------------------------------
// Scalar ingredients

// Smooth profile r -> rho(r) with its derivative.
struct ScalarProfile {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

// Smooth cutoff chi with chi = 1 on [0, r_inner], chi = 0 on [r_outer, inf),
// monotone nonincreasing, built from the exp(-1/s) mollifier.
class SmoothBump {
 public:
  SmoothBump(double r_inner, double r_outer);
  double operator()(double r) const;
  double deriv(double r) const;
  double inner() const { return r_inner_; }
  double outer() const { return r_outer_; }

 private:
  double r_inner_;
  double r_outer_;
};

SmoothBump bump_cutoff(double r_inner, double r_outer);

// rho(r) = r/n exactly near 0, cut off to vanish for |r| >= outer radius, so
// the coordinate field sum rho(x_i) d/dx_i is compactly supported and complete.
ScalarProfile default_volume_profile(int n, double r_inner = 0.5, double r_outer = 1.0);
ScalarProfile linear_volume_profile(int n);  // rho(r) = r/n everywhere (no cutoff)

// H with its first partials; dimension 2n+1, coordinates (x, y, z).
struct HamiltonianSpec {
  int dim = 3;
  std::function<double(const Vec&)> value;
  std::function<double(int, const Vec&)> d_x;  // dH/dx_i
  std::function<double(int, const Vec&)> d_y;  // dH/dy_i
  std::function<double(const Vec&)> d_z;       // dH/dz

  // Partials replaced by central differences of `value`, step 1e-5 (1 + |p|).
  static HamiltonianSpec with_fd_partials(int dim, std::function<double(const Vec&)> h);
};

HamiltonianSpec hamiltonian_H(int n);  // H = z - sum x_i y_i
HamiltonianSpec hamiltonian_F(int n);  // F = 2z - sum x_i y_i

// The contact vector field of H for the standard contact form:
//   X_H = sum (-dH/dy_i) d/dx_i + sum (dH/dx_i + y_i dH/dz) d/dy_i
//       + (H - sum y_i dH/dy_i) d/dz.
Vec contact_vector_field(const HamiltonianSpec& h, const Vec& p);

// ---------------------------------------------------------------------------
// Flows

enum class JacobianMode { analytic, finite_difference };

struct ConformalFlowSpec {
  std::string name;
  int ambient_dim = 0;
  TensorKind tensor_kind = TensorKind::volume_form;
  std::function<Vec(double, const Vec&)> exact_flow;
  std::function<Vec(const Vec&)> vector_field;
  std::function<double(double, const Vec&)> expected_factor;  // f_t(p)
  std::function<Mat(double, const Vec&)> jacobian;            // analytic D phi_t
  std::function<TensorValue(const Vec&)> tensor;              // reference tensor
  JacobianMode jacobian_mode = JacobianMode::analytic;
};

// phi_H^t(x, y, z) = (e^t x, y, e^t z): contact factor t, fixed line (0, y, 0).
Vec flow_H(double t, const Vec& p);
// phi_F^t(x, y, z) = (e^t x, e^t y, e^{2t} z): contact factor 2t, fixed point 0.
Vec flow_F(double t, const Vec& p);
// (q, p) -> (q, e^t p): symplectic factor t (constant, as the closedness of
// omega forces in dimension >= 4).
std::pair<Vec, Vec> liouville_flow_cotangent(double t, const Vec& q, const Vec& p);

ConformalFlowSpec flow_spec_H(int n);
ConformalFlowSpec flow_spec_F(int n);
ConformalFlowSpec flow_spec_liouville_cotangent(int n);
ConformalFlowSpec flow_spec_volume(int n, ScalarProfile profile = {},
                                   double ode_step = 1e-3);
// Reeb translation family of alpha = cos(2 pi z) dx + sin(2 pi z) dy in the
// unit-cube chart of T^3; preserves alpha exactly (factor 0).
ConformalFlowSpec flow_spec_reeb_t3();

ConformalFlowSpec flow_spec_by_name(const std::string& name, int n);

// Integrates x' = rho(x_i) per coordinate together with f' = sum rho'(x_i)
// by the classical fixed-step 4th-order scheme; returns (endpoint, f_t).
// Requires steps >= ceil(|t| / 1e-3) (and >= 1), else StepTooLarge.
std::pair<Vec, double> volume_flow(double t, const Vec& x, const ScalarProfile& profile,
                                   std::int64_t steps);

// Central-difference Jacobian of p -> map(p).
Mat finite_difference_jacobian(const std::function<Vec(const Vec&)>& map, const Vec& p,
                               double step);

// phi_t^* tau at p: contact Dphi^T alpha(phi p); symplectic Dphi^T Omega(phi p) Dphi;
// volume det Dphi * density(phi p). Throws SingularJacobian when |det Dphi| < 1e-12.
TensorValue pullback_form(const ConformalFlowSpec& flow, double t, const Vec& p,
                          double fd_step = 1e-5);

struct PullbackReport {
  std::string flow_name;
  double t = 0.0;
  int dim = 0;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr double kAnalyticPullbackTol = 1e-9;
inline constexpr double kFiniteDifferencePullbackTol = 1e-5;

// Max over `samples` deterministic points in [-1,1]^dim (and over tensor
// components) of |phi_t^* tau - e^{f_t} tau|. Requires expected_factor.
PullbackReport verify_conformal_factor(const ConformalFlowSpec& flow, double t,
                                       std::int64_t samples, std::uint64_t seed);

// Diagnostics for the two ConformalFlowSpec consistency invariants:
// max |phi_0(p) - p| and max |d/dt|_0 phi_t(p) - X(p)| over the samples.
std::pair<double, double> flow_spec_consistency(const ConformalFlowSpec& flow,
                                                const std::vector<Vec>& samples);

}  // namespace confdyn
