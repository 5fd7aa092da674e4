#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tailsitter/vehicle.hpp"

namespace tailsitter {

struct EquilibriumPoint {
  InertialState x_eq;
  EffectiveCommand u_eq;
  VirtualCommand u_virtual;
  double residual_norm = 0.0;
  double airspeed = 0.0;
  int iterations = 0;
};

/// Hover12: [p, v, eps, omega]. Flight10: [p_z, v, eps, omega]. eta is eliminated
/// through the unit-norm constraint.
enum class Layout { Hover12, Flight10 };

std::vector<std::string> layout_names(Layout layout);
int layout_size(Layout layout);

struct LinearModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Layout layout = Layout::Hover12;
  std::vector<std::string> states;
  EquilibriumPoint eq;
};

/// Hover quaternion: body x (thrust axis) pointing up.
UnitQuat hover_attitude();

EquilibriumPoint hover_equilibrium(const VehicleParams& params, const Vec3& p_target = Vec3::Zero());

struct TrimOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;
  double alpha0 = 10.0 * 3.14159265358979323846 / 180.0;
};

/// Level flight along +x at the given airspeed, augmented model. Unknowns: pitch angle,
/// T1+T2, delta1+delta2. Throws NoConvergence.
EquilibriumPoint trim_level_flight(const VehicleParams& params, double airspeed,
                                   const TrimOptions& opts = {});

LinearModel linearize_analytic_hover(const VehicleParams& params);

LinearModel linearize_fd(const VehicleParams& params, const EquilibriumPoint& eq, Model model,
                         Layout layout = Layout::Hover12);

/// x - x_eq in the reduced layout. The quaternion is sign-aligned with q_eq first.
Eigen::VectorXd reduced_deviation(const InertialState& x, const EquilibriumPoint& eq, Layout layout);

/// Inverse of reduced_deviation.
InertialState expand_deviation(const Eigen::VectorXd& dx, const EquilibriumPoint& eq, Layout layout);

/// Derivative of R(q) e1 w.r.t. eps with eta = sign(eta) sqrt(1 - |eps|^2).
Mat3 thrust_axis_jacobian(const UnitQuat& q);

}  // namespace tailsitter
