#pragma once

#include <utility>

#include "tailsitter/mathkin.hpp"
#include "tailsitter/vehicle.hpp"

namespace tailsitter {

struct FlightGains {
  double k_c = 0.5;    // N m
  double k_d = 0.05;   // N m s
  double k_p = 2.0;    // N s/m
  double k_i = 1.0;    // N/m
  double k_dv = 0.1;   // N s^2/m
  double k_u = 30.0;   // 1/s
  double sigma_floor = 1e-6;
  double deriv_tau = 0.05;  // s, low-pass on the v_bx difference
  double v_min = 0.5;       // m/s

  void validate() const;
};

struct FlightCtlState {
  Vec3 u_bar = Vec3::Zero();  // [T1-T2, delta1+delta2, delta1-delta2]
  double pid_integral = 0.0;
  double prev_vbx = 0.0;
  double vbx_dot = 0.0;
  bool primed = false;  // prev_vbx valid
  bool ill_conditioned = false;  // last allocation Jacobian had kappa > 1e14

  /// Allocation state reproducing the current actuator split, PID reset.
  static FlightCtlState from_physical(const PhysicalCommand& pc, const VehicleParams& params);
};

/// Rotation taking u_c onto u_v (so R^T u_v = u_c). Inputs need not be normalized.
UnitQuat los_error_quat(const Vec3& u_c, const Vec3& u_v);

/// Target direction p_c - p and velocity v. Throws DegenerateGeometry when |v| <= v_min
/// or p_c == p.
UnitQuat los_error_quat(const Vec3& p, const Vec3& p_c, const Vec3& v, double v_min = 0.5);

/// -k_c sign(eta_e) eps_e + omega x J omega - k_d omega
Vec3 los_torque(const UnitQuat& q_e, const Vec3& omega_b, const Mat3& J, const FlightGains& gains);

double thrust_sum_max(const VehicleParams& params, const ActuatorLimits& limits = {});
double thrust_sum_min(const VehicleParams& params, const ActuatorLimits& limits = {});

std::pair<double, FlightCtlState> airspeed_pid(double v_bx, double v_c, const FlightCtlState& state, double dt,
                                               const FlightGains& gains, const VehicleParams& params,
                                               const ActuatorLimits& limits = {});

/// Body moment of the airspeed-dependent model as a function of u_bar.
Vec3 allocation_moment(const Vec3& u_bar, double t_sum, const Vec3& v_b, const Vec3& omega_b,
                       const VehicleParams& params);

Mat3 allocation_jacobian(const Vec3& u_bar, double t_sum, const Vec3& v_b, double eta_air,
                         const VehicleParams& params);

struct RegularizedInverse {
  Mat3 inverse;
  double condition_number;
};

/// SVD inverse with singular values floored at sigma_floor * sigma_max. Throws ZeroMatrix.
RegularizedInverse regularized_inverse(const Mat3& Jm, double sigma_floor);

/// Keeps |T1-T2| below t_sum and both elevons inside +-delta_max.
Vec3 project_u_bar(const Vec3& u_bar, double t_sum, const VehicleParams& params, const ActuatorLimits& limits);

struct AllocationStep {
  FlightCtlState next;
  double kappa;
};

AllocationStep allocation_step(const FlightCtlState& ctl, const Vec3& gamma_c, double t_sum, const Vec3& v_b,
                               const Vec3& omega_b, double dt, const VehicleParams& params, const FlightGains& gains,
                               const ActuatorLimits& limits = {});

struct FlightStep {
  EffectiveCommand u;
  VirtualCommand u_virtual;
  FlightCtlState next;
  UnitQuat q_e;
  Vec3 gamma_c;
  double kappa = 0.0;
};

/// LOS error -> torque -> airspeed PID -> allocation. Vectors are taken in body axes; wind enters
/// through v_b.
FlightStep flight_step(const InertialState& state, const FlightCtlState& ctl, const Vec3& p_c, double v_c,
                       const Vec3& wind, double dt, const FlightGains& gains, const VehicleParams& params,
                       const ActuatorLimits& limits = {});

}  // namespace tailsitter
