#pragma once

#include <optional>
#include <string>

#include "tailsitter/equilibria.hpp"
#include "tailsitter/flight_ctl.hpp"
#include "tailsitter/hover_ctl.hpp"
#include "tailsitter/lqr.hpp"
#include "tailsitter/vehicle.hpp"

namespace tailsitter {

struct HybridTime {
  double t = 0.0;
  int j = 0;
};

enum class Mode { NlHover, LinHover, Flight };

std::string mode_name(Mode m);

struct SupervisorConfig {
  double v_enter = 250.0;
  double v_exit = 400.0;
  double d_flight = 50.0;     // m
  double v_min_flight = 0.5;  // m/s

  void validate() const;
};

/// At most one transition per call.
Mode supervisor_jump(Mode mode, double V, double dist_to_target, double speed, const SupervisorConfig& cfg);

struct JumpRecord {
  double t;
  int j;  // jump count after the jump
  Mode from, to;
  double V;
};

enum class ControllerKind { NlHover, Lqr, LqrInt, Flight, Hybrid };

std::string controller_name(ControllerKind k);
ControllerKind controller_from_name(const std::string& name);

/// Everything the closed loop needs besides the state. The LQR designs live on the
/// eps-reduced hover layout; lqi adds three position integrators.
struct ControllerSet {
  HoverGains hover;
  FlightGains flight;
  LqrDesign lqr;
  LqrDesign lqi;
  SupervisorConfig supervisor;
  ActuatorLimits limits;
  double v_c = 20.0;  // m/s, flight airspeed setpoint
  Model model = Model::Augmented;
};

/// Hover LQR on the analytic linearization, optionally with integrators on position.
LqrDesign design_hover_lqr(const VehicleParams& params, const LqrWeights& w, bool integrator = false);

struct SimBundle {
  InertialState x;
  PhysicalCommand actuators;  // applied in the last step
  HoverCtlState hover;
  FlightCtlState flight;
  Vec3 lqi_integral = Vec3::Zero();
  Mode mode = Mode::NlHover;
  HybridTime time;
};

/// Bundle at rest in the actuator configuration that balances weight at hover.
PhysicalCommand hover_actuators(const VehicleParams& params, const ActuatorLimits& limits = {});
SimBundle initial_bundle(const InertialState& x0, const PhysicalCommand& actuators, Mode mode,
                         const VehicleParams& params);

struct StepResult {
  SimBundle next;
  std::optional<JumpRecord> jump;
  Mode flow_mode = Mode::NlHover;  // mode whose controller produced u_cmd
  EffectiveCommand u_cmd;      // controller output before saturation
  PhysicalCommand raw;         // physical split clamped to range, before the rate limits
  bool clipped = false;        // saturation changed the command
  double V = 0.0;              // hover Lyapunov value at the new state
  double kappa = 0.0;          // allocation condition number (flight mode)
};

/// V = dx^T S dx with dx taken around hover at the target.
double hover_lyapunov(const InertialState& x, const Vec3& target, const LqrDesign& lqr, const VehicleParams& params);

/// Flow (active controller, saturation, RK4) then one jump check. Fixed-controller kinds never jump.
StepResult hybrid_step(const SimBundle& b, double dt, const Vec3& target, const Vec3& wind, ControllerKind kind,
                       const ControllerSet& ctl, const VehicleParams& params);

/// Controller state re-initialization on entering `to`.
SimBundle hand_off(const SimBundle& b, Mode to, const VehicleParams& params);

}  // namespace tailsitter
