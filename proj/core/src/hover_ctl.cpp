#include "tailsitter/hover_ctl.hpp"

#include <algorithm>
#include <cmath>

#include "tailsitter/errors.hpp"

namespace tailsitter {

void HoverGains::gompertz_half_constants() {
  gompertz_b = -std::log(0.5);
  gompertz_c = 1.0;
}

HoverCtlState HoverCtlState::init(const InertialState& x, const VehicleParams& params) {
  return {x.q, params.m * params.g};
}

double gompertz(double x, double M, double b, double c) {
  return 2.0 * M * std::exp(-std::exp(b - c * x)) - M;
}

double smooth_max(double a, double b, double eps) {
  return 0.5 * (a + b + std::sqrt((a - b) * (a - b) + eps * eps));
}

namespace {

Vec3 clamp_norm(const Vec3& v, double max_norm) {
  const double n = v.norm();
  return n > max_norm ? Vec3(v * (max_norm / n)) : v;
}

Vec3 gompertz_vec(const Vec3& x, const HoverGains& g) {
  return {gompertz(x.x(), g.M_i, g.gompertz_b, g.gompertz_c), gompertz(x.y(), g.M_i, g.gompertz_b, g.gompertz_c),
          gompertz(x.z(), g.M_i, g.gompertz_b, g.gompertz_c)};
}

Vec3 weight(const VehicleParams& params) { return {0.0, 0.0, params.m * params.g}; }

}  // namespace

Vec3 reference_force(const Vec3& e_p, const Vec3& e_v, const HoverGains& g, const VehicleParams& params) {
  switch (g.mode) {
    case ForceMode::Linear:
      return weight(params) - g.k_pp * e_p - g.k_pd * e_v;
    case ForceMode::ErrorGovernor:
      return weight(params) - g.k_pp * clamp_norm(e_p, g.e_p_max) - g.k_pd * clamp_norm(e_v, g.e_v_max);
    case ForceMode::GompertzSat:
      return weight(params) - gompertz_vec(g.k_pp * e_p + g.k_pd * e_v, g);
    case ForceMode::Qto: {
      const double mu = smooth_max(e_v.norm() / (2.0 * g.M_i), g.k_pd / g.k_pp, g.smooth_max_eps);
      return weight(params) - gompertz_vec(g.k_pp * (e_p + e_v * mu), g);
    }
  }
  return weight(params);
}

std::pair<Mat3, Mat3> reference_force_jacobians(const Vec3& e_p, const Vec3& e_v, const HoverGains& g,
                                                const VehicleParams& params) {
  if (g.mode == ForceMode::Linear) return {-g.k_pp * Mat3::Identity(), -g.k_pd * Mat3::Identity()};
  Mat3 dp, dv;
  for (int k = 0; k < 3; ++k) {
    const double h = 1e-6;
    Vec3 a = e_p, b = e_p;
    a(k) += h;
    b(k) -= h;
    dp.col(k) = (reference_force(a, e_v, g, params) - reference_force(b, e_v, g, params)) / (2.0 * h);
    a = e_v;
    b = e_v;
    a(k) += h;
    b(k) -= h;
    dv.col(k) = (reference_force(e_p, a, g, params) - reference_force(e_p, b, g, params)) / (2.0 * h);
  }
  return {dp, dv};
}

Eigen::Matrix<double, 4, 3> moment_pinv(const VehicleParams& params) {
  const Mat34 M = input_matrices(params).M;
  return M.transpose() * (M * M.transpose()).inverse();
}

Vec4 kernel_direction(const VehicleParams& params) {
  const InputMatrices im = input_matrices(params);
  const Vec4 ones(1.0, 1.0, 0.0, 0.0);
  return ones / (im.F * ones).norm();
}

Vec3 thrust_direction(const VehicleParams& params) {
  const Vec3 d = input_matrices(params).F * kernel_direction(params);
  return d.normalized();
}

EffectiveCommand distribute(const Vec3& tau_r, double f, const VehicleParams& params) {
  return EffectiveCommand::from_vec(moment_pinv(params) * tau_r + kernel_direction(params) * f);
}

namespace {

// vector part of q_ref^-1 (x) q_d, sign-fixed to the short rotation
Vec3 orientation_error(const UnitQuat& q_ref, const UnitQuat& q_d, double* eta_out = nullptr) {
  const UnitQuat e = positive_scalar(quat_error(q_ref, q_d));
  if (eta_out) *eta_out = e.eta;
  return e.eps;
}

Vec3 restricted_term(const HoverCtlState& ctl, const std::optional<UnitQuat>& q_ref, const HoverGains& g,
                     const Vec3& d) {
  if (!q_ref || g.k_q == 0.0) return Vec3::Zero();
  return -g.k_q * d * d.dot(orientation_error(*q_ref, ctl.q_d));
}

}  // namespace

Vec3 desired_rate(const InertialState&, const HoverCtlState& ctl, const Vec3& nu,
                  const std::optional<UnitQuat>& q_ref, const HoverGains& g, const Vec3& d) {
  if (ctl.f <= g.f_min) throw ThrustTooLow("thrust state below f_min");
  const Mat3 Rd = rot_from_quat(ctl.q_d);
  return skew(d) * Rd.transpose() * nu / ctl.f + restricted_term(ctl, q_ref, g, d);
}

Vec3 nu_prime(const Vec3& e_p, const Vec3& e_v, const Vec3& f_delta, const Mat3& R_q, const Mat3& R_qd,
              const Vec3& d_star, double f, const HoverGains& g, double m) {
  return nu_nominal(e_p, e_v, f_delta, g, m) - g.k_pd / m * (R_q - R_qd) * d_star * f;
}

Vec3 nu_nominal(const Vec3& e_p, const Vec3& e_v, const Vec3& f_delta, const HoverGains& g, double m) {
  return g.k_pp * g.k_pd / m * e_p + (g.k_pd * g.k_pd / m - g.k_pp) * e_v - (g.k_pd / m + g.k_delta) * f_delta;
}

namespace {

struct Core {
  Vec3 e_p, e_v, f_r, f_delta;
  Mat3 Dp, Dv, R, Rd;
  Vec3 a_true;  // model acceleration with the measured attitude
  Vec3 a_used;  // acceleration the nu law assumes
  Vec3 nu;
  double f_dot;
};

Core core_terms(const InertialState& x, const HoverCtlState& ctl, const Vec3& target_p, const HoverGains& g,
                const VehicleParams& params, const Vec3& d) {
  Core c;
  c.e_p = x.p - target_p;
  c.e_v = x.v;
  c.f_r = reference_force(c.e_p, c.e_v, g, params);
  std::tie(c.Dp, c.Dv) = reference_force_jacobians(c.e_p, c.e_v, g, params);
  c.R = rot_from_quat(x.q);
  c.Rd = rot_from_quat(ctl.q_d);
  c.f_delta = c.Rd * d * ctl.f - c.f_r;
  const Vec3 grav(0.0, 0.0, params.g);
  c.a_true = c.R * d * ctl.f / params.m - grav;
  c.a_used = g.use_nu_prime ? c.a_true : Vec3(c.Rd * d * ctl.f / params.m - grav);
  // nu = -k_delta f_delta + d f_r / dt
  c.nu = -g.k_delta * c.f_delta + c.Dp * c.e_v + c.Dv * c.a_used;
  c.f_dot = (c.Rd * d).dot(c.nu);
  return c;
}

}  // namespace

Vec3 f_delta_dot(const InertialState& x, const HoverCtlState& ctl, const Vec3& nu, const Vec3& omega_d,
                 const Vec3& target_p, const HoverGains& g, const VehicleParams& params, const Vec3& d) {
  const Core c = core_terms(x, ctl, target_p, g, params, d);
  const double f_dot = (c.Rd * d).dot(nu);
  const Vec3 term1 = c.Rd * d * f_dot;
  const Vec3 term2 = c.Rd * skew(omega_d) * d * ctl.f;
  const Vec3 term3 = -(c.Dp * c.e_v + c.Dv * c.a_true);
  return term1 + term2 + term3;
}

namespace {

Vec3 omega_d_dot_of(const InertialState& x, const HoverCtlState& ctl, const Core& c, const Vec3& omega_d,
                    const std::optional<UnitQuat>& q_ref, const HoverGains& g, const VehicleParams& params,
                    const Vec3& d) {
  const double f = ctl.f;
  const Vec3 omega_d3 = skew(d) * c.Rd.transpose() * c.nu / f;

  // d/dt of f_delta along the true model
  const Vec3 fdd = c.Rd * d * c.f_dot + c.Rd * skew(omega_d) * d * f - (c.Dp * c.e_v + c.Dv * c.a_true);
  // d/dt of the acceleration used inside nu
  const Vec3 a_used_dot = g.use_nu_prime
                              ? Vec3((c.R * skew(x.omega_b) * d * f + c.R * d * c.f_dot) / params.m)
                              : Vec3((c.Rd * skew(omega_d) * d * f + c.Rd * d * c.f_dot) / params.m);
  // Jacobians of f_r are treated as frozen over a step; exact for the linear law
  const Vec3 nu_dot = -g.k_delta * fdd + c.Dp * c.a_true + c.Dv * a_used_dot;

  const Vec3 omega_d3_dot = -(c.f_dot / f) * omega_d3 +
                            skew(d) * (-skew(omega_d) * c.Rd.transpose() * c.nu + c.Rd.transpose() * nu_dot) / f;

  Vec3 omega_d4_dot = Vec3::Zero();
  if (q_ref && g.k_q != 0.0) {
    double eta_e = 1.0;
    const Vec3 eps_e = orientation_error(*q_ref, ctl.q_d, &eta_e);
    const Vec3 eps_dot = 0.5 * (eta_e * omega_d + eps_e.cross(omega_d));
    omega_d4_dot = -g.k_q * d * d.dot(eps_dot);
  }
  return omega_d3_dot + omega_d4_dot;
}

}  // namespace

Vec3 feedforward_alpha(const InertialState& x, const HoverCtlState& ctl, const Vec3& target_p,
                       const std::optional<UnitQuat>& q_ref, const HoverGains& g, const VehicleParams& params) {
  const Vec3 d = thrust_direction(params);
  const Core c = core_terms(x, ctl, target_p, g, params, d);
  const Vec3 omega_d = desired_rate(x, ctl, c.nu, q_ref, g, d);
  return omega_d_dot_of(x, ctl, c, omega_d, q_ref, g, params, d);
}

Vec3 attitude_torque(const InertialState& x, const HoverCtlState& ctl, const Vec3& omega_d,
                     const Vec3& omega_d_dot, const VehicleParams& params, const HoverGains& g) {
  const UnitQuat qe = quat_error(ctl.q_d, x.q);
  const Mat3 J = params.J();
  return -g.k_R * sign_pos(qe.eta) * qe.eps - g.k_omega * (x.omega_b - omega_d) + x.omega_b.cross(J * x.omega_b) +
         J * omega_d_dot;
}

HoverTerms hover_terms(const InertialState& x, const HoverCtlState& ctl, const Vec3& target_p,
                       const std::optional<UnitQuat>& q_ref, const HoverGains& g, const VehicleParams& params) {
  const Vec3 d = thrust_direction(params);
  const Core c = core_terms(x, ctl, target_p, g, params, d);
  HoverTerms t;
  t.e_p = c.e_p;
  t.e_v = c.e_v;
  t.f_r = c.f_r;
  t.f_delta = c.f_delta;
  t.accel = c.a_true;
  t.nu = c.nu;
  t.f_dot = c.f_dot;
  t.omega_d = desired_rate(x, ctl, c.nu, q_ref, g, d);
  t.omega_d_dot = omega_d_dot_of(x, ctl, c, t.omega_d, q_ref, g, params, d);
  t.f_delta_dot = c.Rd * d * c.f_dot + c.Rd * skew(t.omega_d) * d * ctl.f - (c.Dp * c.e_v + c.Dv * c.a_true);
  t.tau_r = attitude_torque(x, ctl, t.omega_d, t.omega_d_dot, params, g);
  t.u = distribute(t.tau_r, ctl.f, params);
  return t;
}

HoverStep hover_step(const InertialState& x, const HoverCtlState& ctl, const Vec3& target_p,
                     const std::optional<UnitQuat>& q_ref, double dt, const HoverGains& g,
                     const VehicleParams& params) {
  if (!(dt > 0.0)) throw Error("hover_step: dt must be positive");
  HoverStep s;
  s.terms = hover_terms(x, ctl, target_p, q_ref, g, params);
  s.u = s.terms.u;
  const Vec3 w = s.terms.omega_d;
  const double angle = w.norm() * dt;
  s.next.q_d = quat_mul(ctl.q_d, UnitQuat::from_axis_angle(w, angle));
  s.next.f = std::clamp(ctl.f + s.terms.f_dot * dt, 2.0 * g.f_min, g.f_max);
  return s;
}

}  // namespace tailsitter
