#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>

#include "tailsitter/mathkin.hpp"

namespace tailsitter {

using Mat34 = Eigen::Matrix<double, 3, 4>;

constexpr double kGravity = 9.81;

/// Reference vehicle constants. Lateral offsets are signed: motor 1 and wing half 1 sit on -y
/// when p_y, a_y are negative.
struct VehicleParams {
  double m = 0.492;
  double c = 0.13;
  double b = 0.55;
  double S = 0.0743;
  double S_p = 0.3989;
  double Jxx = 0.0070, Jyy = 0.0028, Jzz = 0.0061;
  double J_p = 5.1116e-6;  // parsed, unused
  double k_f = 5.13e-6;
  double k_m = 2.64e-7;
  double C_d0 = 0.025;
  double C_y0 = 0.0;
  double p_x = 0.065, p_y = -0.155, p_z = 0.0;
  double a_x = 0.0, a_y = -0.155, a_z = 0.0;
  double xi_f = 0.85;
  double xi_m = 0.55;
  // damping derivatives, carried for completeness; no equation uses them
  double C_lp = 0.2792, C_lq = 0.0, C_lr = 0.1145;
  double C_mp = 0.0, C_mq = 1.2715, C_mr = 0.0;
  double C_np = 0.081, C_nq = 0.0, C_nr = 0.0039;

  double rho = 1.225;
  double mu = 0.0;
  double delta_r = -0.0389;
  double S_wet = 0.2129;
  double g = kGravity;

  /// The reference vehicle (identified S_wet, delta_r and signed offsets).
  static VehicleParams reference() { return {}; }
  /// Table constants with unsigned offsets, S_wet = S and delta_r = c/4.
  static VehicleParams unsigned_offset_defaults();

  Mat3 J() const { return Vec3(Jxx, Jyy, Jzz).asDiagonal(); }
  double C_l() const;                          // 2 pi + C_d0
  double blown_ratio() const { return S_wet / (4.0 * S_p); }
  double thrust_efficiency() const { return 1.0 - blown_ratio() * C_d0; }
  Vec3 p1() const { return {p_x, -p_y, p_z}; }
  Vec3 p2() const { return {p_x, p_y, p_z}; }
  Vec3 a1() const { return {a_x, -a_y, a_z}; }
  Vec3 a2() const { return {a_x, a_y, a_z}; }

  /// Throws ParseError naming the first violated invariant.
  void validate() const;
};

struct ActuatorLimits {
  double omega_min = 200.0;
  double omega_max = 1000.0;
  double omega_dot_max = 3000.0;
  double delta_max = 30.0 * 3.14159265358979323846 / 180.0;
  double delta_rate_max = 5.24;
};

struct InertialState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  UnitQuat q;
  Vec3 omega_b = Vec3::Zero();

  using Vector = Eigen::Matrix<double, 13, 1>;
  Vector to_vector() const;
  static InertialState from_vector(const Vector& x);
};

/// u = [T1, T2, delta1 T1, delta2 T2]
struct EffectiveCommand {
  double u1 = 0.0, u2 = 0.0, u3 = 0.0, u4 = 0.0;
  Vec4 vec() const { return {u1, u2, u3, u4}; }
  static EffectiveCommand from_vec(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
};

/// u' = [T1+T2, T1-T2, delta1+delta2, delta1-delta2]
struct VirtualCommand {
  double t_sum = 0.0, t_diff = 0.0, d_sum = 0.0, d_diff = 0.0;
  Vec4 vec() const { return {t_sum, t_diff, d_sum, d_diff}; }
};

/// Motor speeds (rad/s) and elevon deflections (rad).
struct PhysicalCommand {
  double omega1 = 0.0, omega2 = 0.0, delta1 = 0.0, delta2 = 0.0;
};

struct BodyWrench {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
};

struct InputMatrices {
  Mat34 F;
  Mat34 M;
};

struct StateDerivative {
  Vec3 p_dot, v_dot;
  Vec4 q_dot;
  Vec3 omega_dot;
  InertialState::Vector to_vector() const;
  double norm() const { return to_vector().norm(); }
};

enum class Model { Simplified, Augmented };

using AnyCommand = std::variant<EffectiveCommand, VirtualCommand>;

InputMatrices input_matrices(const VehicleParams& params);

double thrust_from_motor_speed(double omega, const VehicleParams& params);

struct MotorSpeed {
  double omega;
  bool clamped;
};
MotorSpeed motor_speed_from_thrust(double thrust, const VehicleParams& params,
                                   const ActuatorLimits& limits = {});

VirtualCommand to_virtual(const EffectiveCommand& u, double delta1, double delta2);
EffectiveCommand to_effective(const VirtualCommand& up);

/// Splits u into (T_i, delta_i). delta_i is held at prev when T_i is too small to divide by.
PhysicalCommand to_physical(const EffectiveCommand& u, const PhysicalCommand& prev,
                            const VehicleParams& params, const ActuatorLimits& limits = {});
EffectiveCommand from_physical(const PhysicalCommand& pc, const VehicleParams& params);
VirtualCommand virtual_from_physical(const PhysicalCommand& pc, const VehicleParams& params);

constexpr double kDeltaHoldThrust = 0.05;  // N

BodyWrench simplified_wrench(const EffectiveCommand& u, const VehicleParams& params);
BodyWrench augmented_wrench(const VirtualCommand& up, const Vec3& v_b, const Vec3& omega_b,
                            const VehicleParams& params);

/// eta = sqrt(|v_b|^2 + mu c^2 |omega_b|^2)
double airspeed_norm(const Vec3& v_b, const Vec3& omega_b, const VehicleParams& params);

StateDerivative state_deriv(const InertialState& x, const AnyCommand& u, const Vec3& wind,
                            const VehicleParams& params, Model model);

PhysicalCommand saturate_command(const PhysicalCommand& raw, const PhysicalCommand& prev,
                                 double dt, const ActuatorLimits& limits);

bool within_limits(const PhysicalCommand& pc, const ActuatorLimits& limits, double tol = 1e-9);

}  // namespace tailsitter
