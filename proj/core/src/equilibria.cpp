#include "tailsitter/equilibria.hpp"

#include <cmath>
#include <numbers>

#include "tailsitter/errors.hpp"

namespace tailsitter {

std::vector<std::string> layout_names(Layout layout) {
  if (layout == Layout::Hover12)
    return {"p_x", "p_y", "p_z", "v_x", "v_y", "v_z", "eps_1", "eps_2", "eps_3", "omega_x", "omega_y", "omega_z"};
  return {"p_z", "v_x", "v_y", "v_z", "eps_1", "eps_2", "eps_3", "omega_x", "omega_y", "omega_z"};
}

int layout_size(Layout layout) { return layout == Layout::Hover12 ? 12 : 10; }

UnitQuat hover_attitude() {
  const double h = std::numbers::sqrt2 / 2.0;
  return {h, 0.0, -h, 0.0};
}

EquilibriumPoint hover_equilibrium(const VehicleParams& params, const Vec3& p_target) {
  EquilibriumPoint eq;
  eq.x_eq.p = p_target;
  eq.x_eq.q = hover_attitude();
  const double lambda = params.m * params.g / (2.0 * params.thrust_efficiency());
  eq.u_eq = {lambda, lambda, 0.0, 0.0};
  eq.u_virtual = {2.0 * lambda, 0.0, 0.0, 0.0};
  eq.residual_norm = state_deriv(eq.x_eq, eq.u_eq, Vec3::Zero(), params, Model::Simplified).norm();
  return eq;
}

namespace {

UnitQuat pitch_quat(double theta) { return {std::cos(theta / 2.0), 0.0, std::sin(theta / 2.0), 0.0}; }

Eigen::Vector3d trim_residual(const VehicleParams& params, double airspeed, const Eigen::Vector3d& z) {
  InertialState x;
  x.v = Vec3(airspeed, 0.0, 0.0);
  x.q = pitch_quat(z(0));
  const VirtualCommand up{z(1), 0.0, z(2), 0.0};
  const StateDerivative d = state_deriv(x, up, Vec3::Zero(), params, Model::Augmented);
  return {d.v_dot.x(), d.v_dot.z(), d.omega_dot.y()};
}

}  // namespace

EquilibriumPoint trim_level_flight(const VehicleParams& params, double airspeed, const TrimOptions& opts) {
  if (!(airspeed > 0.0)) throw Error("trim airspeed must be positive");
  // hover pitch is -pi/2; start alpha0 closer to level
  Eigen::Vector3d z(-std::numbers::pi / 2.0 + opts.alpha0, params.m * params.g, 0.0);
  Eigen::Vector3d r = trim_residual(params, airspeed, z);
  int it = 0;
  for (; it < opts.max_iterations && r.norm() > opts.tolerance; ++it) {
    Eigen::Matrix3d jac;
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(z(k)));
      Eigen::Vector3d zp = z, zm = z;
      zp(k) += h;
      zm(k) -= h;
      jac.col(k) = (trim_residual(params, airspeed, zp) - trim_residual(params, airspeed, zm)) / (2.0 * h);
    }
    const Eigen::Vector3d step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) break;
    double t = 1.0;
    Eigen::Vector3d zn = z + step;
    Eigen::Vector3d rn = trim_residual(params, airspeed, zn);
    while (rn.norm() >= r.norm() && t > 1e-6) {
      t *= 0.5;
      zn = z + t * step;
      rn = trim_residual(params, airspeed, zn);
    }
    if (rn.norm() >= r.norm()) break;
    z = zn;
    r = rn;
  }
  if (!(r.norm() <= opts.tolerance))
    throw NoConvergence("level-flight trim did not converge at " + std::to_string(airspeed) + " m/s",
                        r.norm());

  EquilibriumPoint eq;
  eq.x_eq.v = Vec3(airspeed, 0.0, 0.0);
  UnitQuat q = pitch_quat(z(0));
  // keep eta > 0, eps_2 < 0 for a nose-up attitude
  if (q.eta < 0.0) q = -q;
  eq.x_eq.q = q;
  eq.u_virtual = {z(1), 0.0, z(2), 0.0};
  eq.u_eq = to_effective(eq.u_virtual);
  const StateDerivative d = state_deriv(eq.x_eq, eq.u_virtual, Vec3::Zero(), params, Model::Augmented);
  Eigen::Matrix<double, 10, 1> res;
  res << d.v_dot, d.q_dot, d.omega_dot;
  eq.residual_norm = res.norm();
  eq.airspeed = airspeed;
  eq.iterations = it;
  return eq;
}

Mat3 thrust_axis_jacobian(const UnitQuat& q) {
  const double e1 = q.eps.x(), e2 = q.eps.y(), e3 = q.eps.z(), h = q.eta;
  Mat3 j;
  j << 0.0, -4.0 * e2, -4.0 * e3,
       2.0 * e2 - 2.0 * e3 * e1 / h, 2.0 * e1 - 2.0 * e3 * e2 / h, 2.0 * h - 2.0 * e3 * e3 / h,
       2.0 * e3 + 2.0 * e2 * e1 / h, -2.0 * h + 2.0 * e2 * e2 / h, 2.0 * e1 + 2.0 * e2 * e3 / h;
  return j;
}

LinearModel linearize_analytic_hover(const VehicleParams& params) {
  const EquilibriumPoint eq = hover_equilibrium(params);
  const UnitQuat& q = eq.x_eq.q;
  const InputMatrices im = input_matrices(params);
  const double thrust = (im.F * eq.u_eq.vec()).x();  // = m g

  LinearModel lm;
  lm.layout = Layout::Hover12;
  lm.states = layout_names(lm.layout);
  lm.eq = eq;
  lm.A = Eigen::MatrixXd::Zero(12, 12);
  lm.B = Eigen::MatrixXd::Zero(12, 4);
  lm.A.block<3, 3>(0, 3) = Mat3::Identity();
  lm.A.block<3, 3>(3, 6) = thrust / params.m * thrust_axis_jacobian(q);
  lm.A.block<3, 3>(6, 9) = 0.5 * (q.eta * Mat3::Identity() + skew(q.eps));
  lm.B.block<3, 4>(3, 0) = rot_from_quat(q) * im.F / params.m;
  lm.B.block<3, 4>(9, 0) = params.J().inverse() * im.M;
  return lm;
}

Eigen::VectorXd reduced_deviation(const InertialState& x, const EquilibriumPoint& eq, Layout layout) {
  const UnitQuat& qe = eq.x_eq.q;
  UnitQuat q = x.q;
  if (q.vec().dot(qe.vec()) < 0.0) q = -q;
  Eigen::VectorXd dx(layout_size(layout));
  if (layout == Layout::Hover12) {
    dx << x.p - eq.x_eq.p, x.v - eq.x_eq.v, q.eps - qe.eps, x.omega_b - eq.x_eq.omega_b;
  } else {
    dx << x.p.z() - eq.x_eq.p.z(), x.v - eq.x_eq.v, q.eps - qe.eps, x.omega_b - eq.x_eq.omega_b;
  }
  return dx;
}

InertialState expand_deviation(const Eigen::VectorXd& dx, const EquilibriumPoint& eq, Layout layout) {
  InertialState x = eq.x_eq;
  int o = 0;
  if (layout == Layout::Hover12) {
    x.p += dx.segment<3>(0);
    o = 3;
  } else {
    x.p.z() += dx(0);
    o = 1;
  }
  x.v += dx.segment<3>(o);
  const Vec3 eps = eq.x_eq.q.eps + dx.segment<3>(o + 3);
  const double s = eq.x_eq.q.eta < 0.0 ? -1.0 : 1.0;
  x.q = UnitQuat(s * std::sqrt(std::max(0.0, 1.0 - eps.squaredNorm())), eps);
  x.omega_b += dx.segment<3>(o + 6);
  return x;
}

namespace {

Eigen::VectorXd reduced_rate(const VehicleParams& params, const InertialState& x, const EffectiveCommand& u,
                             Model model, Layout layout) {
  const StateDerivative d = state_deriv(x, u, Vec3::Zero(), params, model);
  Eigen::VectorXd f(layout_size(layout));
  if (layout == Layout::Hover12)
    f << d.p_dot, d.v_dot, d.q_dot.tail<3>(), d.omega_dot;
  else
    f << d.p_dot.z(), d.v_dot, d.q_dot.tail<3>(), d.omega_dot;
  return f;
}

}  // namespace

LinearModel linearize_fd(const VehicleParams& params, const EquilibriumPoint& eq, Model model, Layout layout) {
  const int n = layout_size(layout);
  const int off = layout == Layout::Hover12 ? 3 : 1;
  LinearModel lm;
  lm.layout = layout;
  lm.states = layout_names(layout);
  lm.eq = eq;
  lm.A.resize(n, n);
  lm.B.resize(n, 4);

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    const bool quat = k >= off + 3 && k < off + 6;
    const double h = quat ? 1e-7 : 1e-6;
    Eigen::VectorXd dp = zero, dm = zero;
    dp(k) = h;
    dm(k) = -h;
    lm.A.col(k) = (reduced_rate(params, expand_deviation(dp, eq, layout), eq.u_eq, model, layout) -
                   reduced_rate(params, expand_deviation(dm, eq, layout), eq.u_eq, model, layout)) /
                  (2.0 * h);
  }
  for (int k = 0; k < 4; ++k) {
    const double h = 1e-6;
    Vec4 up = eq.u_eq.vec(), um = eq.u_eq.vec();
    up(k) += h;
    um(k) -= h;
    lm.B.col(k) = (reduced_rate(params, eq.x_eq, EffectiveCommand::from_vec(up), model, layout) -
                   reduced_rate(params, eq.x_eq, EffectiveCommand::from_vec(um), model, layout)) /
                  (2.0 * h);
  }
  return lm;
}

}  // namespace tailsitter
