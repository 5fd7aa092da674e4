#include "tailsitter/vehicle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailsitter/errors.hpp"

namespace tailsitter {

VehicleParams VehicleParams::unsigned_offset_defaults() {
  VehicleParams p;
  p.p_y = 0.155;
  p.a_y = 0.155;
  p.S_wet = p.S;
  p.delta_r = p.c / 4.0;
  return p;
}

double VehicleParams::C_l() const { return 2.0 * std::numbers::pi + C_d0; }

void VehicleParams::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ParseError(std::string("invalid vehicle parameter: ") + what);
  };
  need(m > 0, "m must be positive");
  need(S > 0, "S must be positive");
  need(S_p > 0, "S_p must be positive");
  need(Jxx > 0 && Jyy > 0 && Jzz > 0, "inertia must be positive");
  need(k_f > 0, "k_f must be positive");
  need(k_m > 0, "k_m must be positive");
  need(c > 0, "c must be positive");
  need(rho > 0, "rho must be positive");
  need(mu >= 0, "mu must be non-negative");
  need(S_wet >= 0, "S_wet must be non-negative");
}

InertialState::Vector InertialState::to_vector() const {
  Vector x;
  x << p, v, q.eta, q.eps, omega_b;
  return x;
}

InertialState InertialState::from_vector(const Vector& x) {
  InertialState s;
  s.p = x.segment<3>(0);
  s.v = x.segment<3>(3);
  s.q = UnitQuat(x(6), x.segment<3>(7));
  s.omega_b = x.segment<3>(10);
  return s;
}

InertialState::Vector StateDerivative::to_vector() const {
  InertialState::Vector x;
  x << p_dot, v_dot, q_dot, omega_dot;
  return x;
}

InputMatrices input_matrices(const VehicleParams& pr) {
  const double k = pr.blown_ratio();
  const double cl = pr.C_l();
  const double thrust = 1.0 - k * pr.C_d0;
  const double lift = -k * cl * pr.xi_f;
  const double km = pr.k_m / pr.k_f;
  const double roll = k * pr.a_y * cl * pr.xi_f;
  const double pitch = k * pr.delta_r * cl * pr.xi_m;
  const double yaw = pr.p_y + k * pr.a_y * pr.C_d0;

  InputMatrices im;
  im.F << thrust, thrust, 0.0, 0.0,
          0.0, 0.0, 0.0, 0.0,
          0.0, 0.0, lift, lift;
  im.M << km, -km, roll, -roll,
          0.0, 0.0, pitch, pitch,
          yaw, -yaw, 0.0, 0.0;
  return im;
}

double thrust_from_motor_speed(double omega, const VehicleParams& params) {
  return params.k_f * omega * omega;
}

MotorSpeed motor_speed_from_thrust(double thrust, const VehicleParams& params,
                                   const ActuatorLimits& limits) {
  const double raw = thrust > 0.0 ? std::sqrt(thrust / params.k_f) : 0.0;
  const double w = std::clamp(raw, limits.omega_min, limits.omega_max);
  return {w, w != raw};
}

VirtualCommand to_virtual(const EffectiveCommand& u, double delta1, double delta2) {
  return {u.u1 + u.u2, u.u1 - u.u2, delta1 + delta2, delta1 - delta2};
}

EffectiveCommand to_effective(const VirtualCommand& up) {
  const double t1 = 0.5 * (up.t_sum + up.t_diff);
  const double t2 = 0.5 * (up.t_sum - up.t_diff);
  const double d1 = 0.5 * (up.d_sum + up.d_diff);
  const double d2 = 0.5 * (up.d_sum - up.d_diff);
  return {t1, t2, d1 * t1, d2 * t2};
}

PhysicalCommand to_physical(const EffectiveCommand& u, const PhysicalCommand& prev,
                            const VehicleParams& params, const ActuatorLimits& limits) {
  PhysicalCommand pc;
  pc.omega1 = motor_speed_from_thrust(u.u1, params, limits).omega;
  pc.omega2 = motor_speed_from_thrust(u.u2, params, limits).omega;
  const double dm = limits.delta_max;
  pc.delta1 = std::clamp(u.u1 >= kDeltaHoldThrust ? u.u3 / u.u1 : prev.delta1, -dm, dm);
  pc.delta2 = std::clamp(u.u2 >= kDeltaHoldThrust ? u.u4 / u.u2 : prev.delta2, -dm, dm);
  return pc;
}

EffectiveCommand from_physical(const PhysicalCommand& pc, const VehicleParams& params) {
  const double t1 = thrust_from_motor_speed(pc.omega1, params);
  const double t2 = thrust_from_motor_speed(pc.omega2, params);
  return {t1, t2, pc.delta1 * t1, pc.delta2 * t2};
}

VirtualCommand virtual_from_physical(const PhysicalCommand& pc, const VehicleParams& params) {
  const double t1 = thrust_from_motor_speed(pc.omega1, params);
  const double t2 = thrust_from_motor_speed(pc.omega2, params);
  return {t1 + t2, t1 - t2, pc.delta1 + pc.delta2, pc.delta1 - pc.delta2};
}

BodyWrench simplified_wrench(const EffectiveCommand& u, const VehicleParams& params) {
  const InputMatrices im = input_matrices(params);
  const Vec4 uv = u.vec();
  return {im.F * uv, im.M * uv};
}

double airspeed_norm(const Vec3& v_b, const Vec3& omega_b, const VehicleParams& pr) {
  return std::sqrt(v_b.squaredNorm() + pr.mu * pr.c * pr.c * omega_b.squaredNorm());
}

BodyWrench augmented_wrench(const VirtualCommand& up, const Vec3& v_b, const Vec3& omega_b,
                            const VehicleParams& pr) {
  const double k = pr.blown_ratio();
  const double cl = pr.C_l();
  const double eta = airspeed_norm(v_b, omega_b, pr);
  const double q2 = 0.5 * pr.rho * pr.S * eta;   // 1/2 rho S eta
  const double q4 = 0.25 * pr.rho * pr.S * eta;  // 1/4 rho S eta
  const double vx = v_b.x(), vz = v_b.z();
  const double ts = up.t_sum, td = up.t_diff, ds = up.d_sum, dd = up.d_diff;

  BodyWrench w;
  w.force.x() = (1.0 - k * pr.C_d0) * ts - q2 * pr.C_d0 * vx + q4 * pr.xi_f * pr.C_d0 * vz * ds;
  w.force.y() = 0.0;
  w.force.z() = -0.5 * k * cl * pr.xi_f * (ds * ts + dd * td) - q2 * cl * vz -
                q4 * pr.xi_f * cl * vx * ds;

  const double roll = 0.5 * k * pr.a_y * cl * pr.xi_f;
  const double pitch = 0.5 * k * pr.delta_r * cl * pr.xi_m;
  w.moment.x() = (pr.k_m / pr.k_f + roll * ds) * td +
                 (roll * ts + q4 * pr.a_y * cl * pr.xi_f * vx) * dd;
  // T1+T2 pairs with d_sum here; the swapped pairing would break agreement with M_b at rest.
  w.moment.y() = (pitch * ts + q4 * pr.delta_r * cl * pr.xi_m * vx) * ds + pitch * td * dd +
                 q2 * pr.delta_r * cl * vz;
  w.moment.z() = (pr.p_y + k * pr.a_y * pr.C_d0) * td + q4 * pr.a_y * pr.C_d0 * pr.xi_f * vz * dd;
  return w;
}

namespace {

VirtualCommand virtual_of(const EffectiveCommand& u) {
  const double d1 = u.u1 >= kDeltaHoldThrust ? u.u3 / u.u1 : 0.0;
  const double d2 = u.u2 >= kDeltaHoldThrust ? u.u4 / u.u2 : 0.0;
  return to_virtual(u, d1, d2);
}

}  // namespace

StateDerivative state_deriv(const InertialState& x, const AnyCommand& u, const Vec3& wind,
                            const VehicleParams& pr, Model model) {
  const Mat3 R = rot_from_quat(x.q);
  BodyWrench w;
  if (model == Model::Simplified) {
    const EffectiveCommand ue = std::holds_alternative<EffectiveCommand>(u)
                                    ? std::get<EffectiveCommand>(u)
                                    : to_effective(std::get<VirtualCommand>(u));
    w = simplified_wrench(ue, pr);
  } else {
    const VirtualCommand uv = std::holds_alternative<VirtualCommand>(u)
                                  ? std::get<VirtualCommand>(u)
                                  : virtual_of(std::get<EffectiveCommand>(u));
    const Vec3 v_b = R.transpose() * (x.v - wind);
    w = augmented_wrench(uv, v_b, x.omega_b, pr);
  }

  const Mat3 J = pr.J();
  StateDerivative d;
  d.p_dot = x.v;
  d.v_dot = R * w.force / pr.m - Vec3(0.0, 0.0, pr.g);
  d.q_dot = quat_deriv(x.q, x.omega_b);
  d.omega_dot = J.inverse() * (w.moment - x.omega_b.cross(J * x.omega_b));
  return d;
}

namespace {

double step_toward(double target, double prev, double max_step) {
  return std::clamp(target, prev - max_step, prev + max_step);
}

}  // namespace

PhysicalCommand saturate_command(const PhysicalCommand& raw, const PhysicalCommand& prev,
                                 double dt, const ActuatorLimits& lim) {
  auto clamp_w = [&](double w) { return std::clamp(w, lim.omega_min, lim.omega_max); };
  auto clamp_d = [&](double d) { return std::clamp(d, -lim.delta_max, lim.delta_max); };
  PhysicalCommand out;
  out.omega1 = step_toward(clamp_w(raw.omega1), prev.omega1, lim.omega_dot_max * dt);
  out.omega2 = step_toward(clamp_w(raw.omega2), prev.omega2, lim.omega_dot_max * dt);
  out.delta1 = step_toward(clamp_d(raw.delta1), prev.delta1, lim.delta_rate_max * dt);
  out.delta2 = step_toward(clamp_d(raw.delta2), prev.delta2, lim.delta_rate_max * dt);
  return out;
}

bool within_limits(const PhysicalCommand& pc, const ActuatorLimits& lim, double tol) {
  auto in = [tol](double x, double lo, double hi) { return x >= lo - tol && x <= hi + tol; };
  return in(pc.omega1, lim.omega_min, lim.omega_max) && in(pc.omega2, lim.omega_min, lim.omega_max) &&
         in(pc.delta1, -lim.delta_max, lim.delta_max) && in(pc.delta2, -lim.delta_max, lim.delta_max);
}

}  // namespace tailsitter
