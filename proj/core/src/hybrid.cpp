#include "tailsitter/hybrid.hpp"

#include <cmath>

#include "tailsitter/errors.hpp"
#include "tailsitter/integrator.hpp"

namespace tailsitter {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::NlHover:
      return "NL_HOVER";
    case Mode::LinHover:
      return "LIN_HOVER";
    case Mode::Flight:
      return "FLIGHT";
  }
  return "?";
}

void SupervisorConfig::validate() const {
  if (!(v_enter < v_exit)) throw ParseError("supervisor: v_enter must be below v_exit");
  if (!(d_flight > 0.0)) throw ParseError("supervisor: d_flight must be positive");
}

Mode supervisor_jump(Mode mode, double V, double dist, double speed, const SupervisorConfig& cfg) {
  switch (mode) {
    case Mode::NlHover:
      if (dist > cfg.d_flight && speed > cfg.v_min_flight) return Mode::Flight;
      if (V < cfg.v_enter) return Mode::LinHover;
      return mode;
    case Mode::LinHover:
      if (dist > cfg.d_flight && speed > cfg.v_min_flight) return Mode::Flight;
      if (V > cfg.v_exit) return Mode::NlHover;
      return mode;
    case Mode::Flight:
      if (dist <= cfg.d_flight) return Mode::NlHover;
      return mode;
  }
  return mode;
}

std::string controller_name(ControllerKind k) {
  switch (k) {
    case ControllerKind::NlHover:
      return "nl_hover";
    case ControllerKind::Lqr:
      return "lqr";
    case ControllerKind::LqrInt:
      return "lqr_int";
    case ControllerKind::Flight:
      return "flight";
    case ControllerKind::Hybrid:
      return "hybrid";
  }
  return "?";
}

ControllerKind controller_from_name(const std::string& n) {
  if (n == "nl_hover") return ControllerKind::NlHover;
  if (n == "lqr") return ControllerKind::Lqr;
  if (n == "lqr_int") return ControllerKind::LqrInt;
  if (n == "flight") return ControllerKind::Flight;
  if (n == "hybrid") return ControllerKind::Hybrid;
  throw ParseError("unknown controller '" + n + "'");
}

LqrDesign design_hover_lqr(const VehicleParams& params, const LqrWeights& w, bool integrator) {
  const LinearModel lm = linearize_analytic_hover(params);
  if (!integrator) return solve_care(lm.A, lm.B, w);
  auto [A, B] = augment_integrator(lm.A, lm.B);
  return solve_care(A, B, w);
}

PhysicalCommand hover_actuators(const VehicleParams& params, const ActuatorLimits& limits) {
  const EquilibriumPoint eq = hover_equilibrium(params);
  const double w = motor_speed_from_thrust(eq.u_eq.u1, params, limits).omega;
  return {w, w, 0.0, 0.0};
}

namespace {

double applied_thrust(const PhysicalCommand& pc, const VehicleParams& params) {
  const InputMatrices im = input_matrices(params);
  return (im.F * from_physical(pc, params).vec()).norm();
}

Mode mode_for(ControllerKind k, Mode hybrid_mode) {
  switch (k) {
    case ControllerKind::NlHover:
      return Mode::NlHover;
    case ControllerKind::Lqr:
    case ControllerKind::LqrInt:
      return Mode::LinHover;
    case ControllerKind::Flight:
      return Mode::Flight;
    case ControllerKind::Hybrid:
      return hybrid_mode;
  }
  return hybrid_mode;
}

}  // namespace

SimBundle hand_off(const SimBundle& b, Mode to, const VehicleParams& params) {
  SimBundle n = b;
  n.mode = to;
  if (to == Mode::NlHover) {
    n.hover.q_d = b.x.q;
    n.hover.f = std::max(applied_thrust(b.actuators, params), 2.0 * HoverGains{}.f_min);
  } else if (to == Mode::Flight) {
    n.flight = FlightCtlState::from_physical(b.actuators, params);
  } else {
    n.lqi_integral.setZero();
  }
  return n;
}

SimBundle initial_bundle(const InertialState& x0, const PhysicalCommand& actuators, Mode mode,
                         const VehicleParams& params) {
  SimBundle b;
  b.x = x0;
  b.actuators = actuators;
  b.mode = mode;
  b.hover = HoverCtlState::init(x0, params);
  b.hover.f = std::max(applied_thrust(actuators, params), 2.0 * HoverGains{}.f_min);
  b.flight = FlightCtlState::from_physical(actuators, params);
  return b;
}

double hover_lyapunov(const InertialState& x, const Vec3& target, const LqrDesign& lqr, const VehicleParams& params) {
  const EquilibriumPoint eq = hover_equilibrium(params, target);
  const Eigen::VectorXd dx = reduced_deviation(x, eq, Layout::Hover12);
  return lyapunov_value(lqr.S.topLeftCorner(12, 12), dx);
}

StepResult hybrid_step(const SimBundle& b, double dt, const Vec3& target, const Vec3& wind, ControllerKind kind,
                       const ControllerSet& ctl, const VehicleParams& params) {
  if (!(dt > 0.0)) throw Error("hybrid_step: dt must be positive");
  StepResult r;
  r.next = b;
  const Mode mode = mode_for(kind, b.mode);
  r.next.mode = mode;
  r.flow_mode = mode;

  switch (mode) {
    case Mode::NlHover: {
      const HoverStep hs = hover_step(b.x, b.hover, target, hover_attitude(), dt, ctl.hover, params);
      r.u_cmd = hs.u;
      r.next.hover = hs.next;
      break;
    }
    case Mode::LinHover: {
      const EquilibriumPoint eq = hover_equilibrium(params, target);
      const Eigen::VectorXd dx = reduced_deviation(b.x, eq, Layout::Hover12);
      Vec4 du;
      if (kind == ControllerKind::LqrInt) {
        Eigen::VectorXd xa(15);
        xa << dx, b.lqi_integral;
        du = -ctl.lqi.K * xa;
        r.next.lqi_integral = b.lqi_integral + dt * (target - b.x.p);
      } else {
        du = -ctl.lqr.K * dx;
      }
      r.u_cmd = EffectiveCommand::from_vec(eq.u_eq.vec() + du);
      break;
    }
    case Mode::Flight: {
      const FlightStep fs = flight_step(b.x, b.flight, target, ctl.v_c, wind, dt, ctl.flight, params, ctl.limits);
      r.u_cmd = fs.u;
      r.next.flight = fs.next;
      r.kappa = fs.kappa;
      break;
    }
  }

  r.raw = to_physical(r.u_cmd, b.actuators, params, ctl.limits);
  const PhysicalCommand applied = saturate_command(r.raw, b.actuators, dt, ctl.limits);
  // anything the limits changed: motor range, elevon range and the rate limits
  const Vec4 delivered = from_physical(applied, params).vec();
  r.clipped = (delivered - r.u_cmd.vec()).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, r.u_cmd.vec().cwiseAbs().maxCoeff());
  r.next.actuators = applied;

  AnyCommand held = virtual_from_physical(applied, params);
  if (ctl.model == Model::Simplified) held = from_physical(applied, params);
  r.next.x = rk4_step(b.x, held, wind, dt, params, ctl.model, b.time.t);
  r.next.time.t = b.time.t + dt;

  r.V = hover_lyapunov(r.next.x, target, ctl.lqr, params);
  if (kind == ControllerKind::Hybrid) {
    const double dist = (target - r.next.x.p).norm();
    const Mode to = supervisor_jump(mode, r.V, dist, r.next.x.v.norm(), ctl.supervisor);
    if (to != mode) {
      r.next = hand_off(r.next, to, params);
      r.next.time.j = b.time.j + 1;
      r.jump = JumpRecord{r.next.time.t, r.next.time.j, mode, to, r.V};
    }
  }
  return r;
}

}  // namespace tailsitter
