#pragma once

#include <optional>
#include <utility>

#include "tailsitter/mathkin.hpp"
#include "tailsitter/vehicle.hpp"

namespace tailsitter {

enum class ForceMode { Linear, Qto, GompertzSat, ErrorGovernor };

struct HoverGains {
  double k_pp = 1.0;     // N/m
  double k_pd = 1.2;     // N s/m
  double k_delta = 2.0;  // 1/s
  double k_q = 0.5;      // 1/s, roll about the thrust axis
  double k_R = 0.15;     // N m
  double k_omega = 0.03; // N m s
  double M_i = 1.0;      // N, saturation level
  double e_p_max = 1.0;  // m
  double e_v_max = 1.0;  // m/s
  double gompertz_b = -0.36651292058166435;  // ln(ln 2): sigma(0) = 0
  double gompertz_c = 1.0;
  double smooth_max_eps = 1e-3;
  double f_min = 0.1;  // N
  double f_max = 10.0;  // N, thrust state ceiling (about the motors' combined maximum)
  ForceMode mode = ForceMode::Linear;
  bool use_nu_prime = true;

  /// b = -ln(1/2), c = 1; sigma(0) != 0 with these.
  void gompertz_half_constants();
};

struct HoverCtlState {
  UnitQuat q_d;
  double f = 0.0;

  /// q_d = current attitude, f = m g.
  static HoverCtlState init(const InertialState& x, const VehicleParams& params);
};

/// Thrust direction in body axes; for the reference vehicle the normalized kernel direction gives e1.
Vec3 thrust_direction(const VehicleParams& params);

/// sigma_M(x) = 2M exp(-exp(b - c x)) - M
double gompertz(double x, double M, double b, double c);
/// (a + b + sqrt((a - b)^2 + eps^2)) / 2
double smooth_max(double a, double b, double eps);

Vec3 reference_force(const Vec3& e_p, const Vec3& e_v, const HoverGains& gains, const VehicleParams& params);

/// d f_r / d e_p and d f_r / d e_v.
std::pair<Mat3, Mat3> reference_force_jacobians(const Vec3& e_p, const Vec3& e_v, const HoverGains& gains,
                                                const VehicleParams& params);

/// u = pinv(M_b) tau_r + u_bar f with F_b u_bar of unit norm.
EffectiveCommand distribute(const Vec3& tau_r, double f, const VehicleParams& params);
Eigen::Matrix<double, 4, 3> moment_pinv(const VehicleParams& params);
Vec4 kernel_direction(const VehicleParams& params);

/// omega_d = (1/f)[d]x R(q_d)^T nu - k_q d d^T eps'. eps' comes from q_ref^-1 (x) q_d.
/// Throws ThrustTooLow when f <= f_min.
Vec3 desired_rate(const InertialState& state, const HoverCtlState& ctl, const Vec3& nu,
                  const std::optional<UnitQuat>& q_ref, const HoverGains& gains,
                  const Vec3& d_star = Vec3::UnitX());

/// Closed form for the linear force law with the measured-attitude correction.
Vec3 nu_prime(const Vec3& e_p, const Vec3& e_v, const Vec3& f_delta, const Mat3& R_q, const Mat3& R_qd,
              const Vec3& d_star, double f, const HoverGains& gains, double m);
/// Same law assuming q = q_d.
Vec3 nu_nominal(const Vec3& e_p, const Vec3& e_v, const Vec3& f_delta, const HoverGains& gains, double m);

/// Every intermediate quantity of one controller evaluation.
struct HoverTerms {
  Vec3 e_p, e_v, f_r, f_delta, accel, nu, omega_d, omega_d_dot, tau_r;
  double f_dot = 0.0;
  Vec3 f_delta_dot;
  EffectiveCommand u;
};

HoverTerms hover_terms(const InertialState& state, const HoverCtlState& ctl, const Vec3& target_p,
                       const std::optional<UnitQuat>& q_ref, const HoverGains& gains,
                       const VehicleParams& params);

/// Analytic time derivative of f_delta = R(q_d) d f - f_r along the model.
Vec3 f_delta_dot(const InertialState& state, const HoverCtlState& ctl, const Vec3& nu, const Vec3& omega_d,
                 const Vec3& target_p, const HoverGains& gains, const VehicleParams& params,
                 const Vec3& d_star = Vec3::UnitX());

/// Analytic d omega_d / dt.
Vec3 feedforward_alpha(const InertialState& state, const HoverCtlState& ctl, const Vec3& target_p,
                       const std::optional<UnitQuat>& q_ref, const HoverGains& gains,
                       const VehicleParams& params);

/// -k_R sign(eta_e) eps_e - k_omega (omega - omega_d) + omega x J omega + J omega_d_dot, q_e = q_d^-1 (x) q
Vec3 attitude_torque(const InertialState& state, const HoverCtlState& ctl, const Vec3& omega_d,
                     const Vec3& omega_d_dot, const VehicleParams& params, const HoverGains& gains);

struct HoverStep {
  EffectiveCommand u;
  HoverCtlState next;
  HoverTerms terms;
};

/// Evaluates the controller and advances (q_d, f) by dt. The returned command is unsaturated;
/// the actuator layer applies limits.
HoverStep hover_step(const InertialState& state, const HoverCtlState& ctl, const Vec3& target_p,
                     const std::optional<UnitQuat>& q_ref, double dt, const HoverGains& gains,
                     const VehicleParams& params);

}  // namespace tailsitter
