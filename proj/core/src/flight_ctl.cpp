#include "tailsitter/flight_ctl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "tailsitter/errors.hpp"

namespace tailsitter {

void FlightGains::validate() const {
  if (!(k_c > 0 && k_d > 0 && k_p > 0 && k_i > 0 && k_dv > 0 && k_u > 0))
    throw ParseError("flight gains must be positive");
  if (!(sigma_floor > 0 && sigma_floor < 1)) throw ParseError("sigma_floor must lie in (0, 1)");
  if (!(deriv_tau > 0 && v_min > 0)) throw ParseError("deriv_tau and v_min must be positive");
}

FlightCtlState FlightCtlState::from_physical(const PhysicalCommand& pc, const VehicleParams& params) {
  const VirtualCommand uv = virtual_from_physical(pc, params);
  FlightCtlState s;
  s.u_bar = {uv.t_diff, uv.d_sum, uv.d_diff};
  return s;
}

UnitQuat los_error_quat(const Vec3& u_c_in, const Vec3& u_v_in) {
  const Vec3 u_c = u_c_in.normalized();
  const Vec3 u_v = u_v_in.normalized();
  const double c = std::clamp(u_c.dot(u_v), -1.0, 1.0);
  const Vec3 axis = u_c.cross(u_v);
  const double s = axis.norm();
  if (s < 1e-12) {
    if (c > 0.0) return UnitQuat::identity();
    // half turn about e3 projected off u_v, e2 if that vanishes
    Vec3 n = Vec3::UnitZ() - u_v * u_v.z();
    if (n.norm() < 1e-9) n = Vec3::UnitY() - u_v * u_v.y();
    return {0.0, n.normalized()};
  }
  return {std::sqrt((1.0 + c) / 2.0), axis / s * std::sqrt((1.0 - c) / 2.0)};
}

UnitQuat los_error_quat(const Vec3& p, const Vec3& p_c, const Vec3& v, double v_min) {
  if (v.norm() <= v_min) throw DegenerateGeometry("velocity below v_min, line of sight undefined");
  const Vec3 r = p_c - p;
  if (r.norm() == 0.0) throw DegenerateGeometry("target coincides with position");
  return los_error_quat(r, v);
}

Vec3 los_torque(const UnitQuat& q_e, const Vec3& omega_b, const Mat3& J, const FlightGains& g) {
  return -g.k_c * sign_pos(q_e.eta) * q_e.eps + omega_b.cross(J * omega_b) - g.k_d * omega_b;
}

double thrust_sum_max(const VehicleParams& params, const ActuatorLimits& limits) {
  return 2.0 * thrust_from_motor_speed(limits.omega_max, params);
}

double thrust_sum_min(const VehicleParams& params, const ActuatorLimits& limits) {
  return 2.0 * thrust_from_motor_speed(limits.omega_min, params);
}

std::pair<double, FlightCtlState> airspeed_pid(double v_bx, double v_c, const FlightCtlState& state, double dt,
                                               const FlightGains& g, const VehicleParams& params,
                                               const ActuatorLimits& limits) {
  if (!(dt > 0.0)) throw Error("airspeed_pid: dt must be positive");
  FlightCtlState s = state;
  if (s.primed) {
    const double raw = (v_bx - s.prev_vbx) / dt;
    s.vbx_dot += dt / (g.deriv_tau + dt) * (raw - s.vbx_dot);
  }
  s.prev_vbx = v_bx;
  s.primed = true;

  const double e = v_c - v_bx;
  const double pd = g.k_p * e - g.k_dv * s.vbx_dot;
  const double lo = thrust_sum_min(params, limits), hi = thrust_sum_max(params, limits);
  s.pid_integral = std::clamp(s.pid_integral + e * dt, (lo - pd) / g.k_i, (hi - pd) / g.k_i);
  const double t_sum = std::clamp(pd + g.k_i * s.pid_integral, lo, hi);
  return {t_sum, s};
}

Vec3 allocation_moment(const Vec3& u_bar, double t_sum, const Vec3& v_b, const Vec3& omega_b,
                       const VehicleParams& params) {
  return augmented_wrench({t_sum, u_bar(0), u_bar(1), u_bar(2)}, v_b, omega_b, params).moment;
}

Mat3 allocation_jacobian(const Vec3& u_bar, double t_sum, const Vec3& v_b, double eta_air,
                         const VehicleParams& pr) {
  const double k = pr.blown_ratio();
  const double cl = pr.C_l();
  const double q4 = 0.25 * pr.rho * pr.S * eta_air;
  const double roll = 0.5 * k * pr.a_y * cl * pr.xi_f;
  const double pitch = 0.5 * k * pr.delta_r * cl * pr.xi_m;
  const double td = u_bar(0), ds = u_bar(1), dd = u_bar(2);
  const double vx = v_b.x(), vz = v_b.z();
  Mat3 jm;
  jm << pr.k_m / pr.k_f + roll * ds, roll * td, roll * t_sum + q4 * pr.a_y * cl * pr.xi_f * vx,
      pitch * dd, pitch * t_sum + q4 * pr.delta_r * cl * pr.xi_m * vx, pitch * td,
      pr.p_y + k * pr.a_y * pr.C_d0, 0.0, q4 * pr.a_y * pr.C_d0 * pr.xi_f * vz;
  return jm;
}

RegularizedInverse regularized_inverse(const Mat3& Jm, double sigma_floor) {
  Eigen::JacobiSVD<Mat3> svd(Jm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec3 sv = svd.singularValues();
  const double smax = sv(0);
  if (!(smax > 0.0)) throw ZeroMatrix("allocation Jacobian is zero");
  const double kappa = sv(2) > 0.0 ? smax / sv(2) : std::numeric_limits<double>::infinity();
  const double floor = sigma_floor * smax;
  Vec3 inv;
  for (int i = 0; i < 3; ++i) inv(i) = 1.0 / std::max(sv(i), floor);
  return {svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose(), kappa};
}

Vec3 project_u_bar(const Vec3& u_bar, double t_sum, const VehicleParams&, const ActuatorLimits& limits) {
  const double tmax = std::max(t_sum, 0.0);
  const double d1 = std::clamp(0.5 * (u_bar(1) + u_bar(2)), -limits.delta_max, limits.delta_max);
  const double d2 = std::clamp(0.5 * (u_bar(1) - u_bar(2)), -limits.delta_max, limits.delta_max);
  return {std::clamp(u_bar(0), -tmax, tmax), d1 + d2, d1 - d2};
}

AllocationStep allocation_step(const FlightCtlState& ctl, const Vec3& gamma_c, double t_sum, const Vec3& v_b,
                               const Vec3& omega_b, double dt, const VehicleParams& params, const FlightGains& g,
                               const ActuatorLimits& limits) {
  if (!(dt > 0.0)) throw Error("allocation_step: dt must be positive");
  const double eta = airspeed_norm(v_b, omega_b, params);
  const RegularizedInverse ri =
      regularized_inverse(allocation_jacobian(ctl.u_bar, t_sum, v_b, eta, params), g.sigma_floor);
  const bool ill = ri.condition_number > 1e14;
  if (ill && !ctl.ill_conditioned)
    spdlog::warn("allocation Jacobian ill-conditioned, kappa={:.3g}", ri.condition_number);
  const Vec3 residual = allocation_moment(ctl.u_bar, t_sum, v_b, omega_b, params) - gamma_c;
  AllocationStep out{ctl, ri.condition_number};
  out.next.ill_conditioned = ill;
  out.next.u_bar = project_u_bar(ctl.u_bar - dt * g.k_u * ri.inverse * residual, t_sum, params, limits);
  return out;
}

FlightStep flight_step(const InertialState& x, const FlightCtlState& ctl, const Vec3& p_c, double v_c,
                       const Vec3& wind, double dt, const FlightGains& g, const VehicleParams& params,
                       const ActuatorLimits& limits) {
  const Mat3 R = rot_from_quat(x.q);
  const Vec3 v_b = R.transpose() * (x.v - wind);
  if (x.v.norm() <= g.v_min) throw DegenerateGeometry("velocity below v_min, line of sight undefined");
  const Vec3 r = p_c - x.p;
  if (r.norm() == 0.0) throw DegenerateGeometry("target coincides with position");

  FlightStep out;
  out.q_e = los_error_quat(R.transpose() * r, R.transpose() * x.v);
  out.gamma_c = los_torque(out.q_e, x.omega_b, params.J(), g);
  auto [t_sum, pid] = airspeed_pid(v_b.x(), v_c, ctl, dt, g, params, limits);
  const AllocationStep a = allocation_step(pid, out.gamma_c, t_sum, v_b, x.omega_b, dt, params, g, limits);
  out.next = a.next;
  out.kappa = a.kappa;

  const Vec3& ub = out.next.u_bar;
  out.u_virtual = {t_sum, ub(0), ub(1), ub(2)};
  const double t1 = 0.5 * (t_sum + ub(0)), t2 = 0.5 * (t_sum - ub(0));
  const double d1 = 0.5 * (ub(1) + ub(2)), d2 = 0.5 * (ub(1) - ub(2));
  out.u = {t1, t2, d1 * t1, d2 * t2};
  return out;
}

}  // namespace tailsitter
