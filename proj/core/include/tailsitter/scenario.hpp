#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailsitter/hybrid.hpp"

namespace tailsitter {

struct TargetPoint {
  double t;  // s, target active from here on
  Vec3 p;
};

struct WindPoint {
  double t;  // s, wind held from here on
  Vec3 v;
};

/// Diagonal LQR weights on [p, v, eps, omega]; integrator weights for lqr_int.
struct LqrDiagonalWeights {
  Eigen::Matrix<double, 12, 1> q;
  Eigen::Vector4d r;
  Vec3 q_int;

  LqrDiagonalWeights();
  LqrWeights hover() const;
  LqrWeights integral() const;
};

struct Scenario {
  std::string name = "unnamed";
  InertialState initial;
  std::optional<PhysicalCommand> initial_actuators;  // hover trim when absent
  std::vector<TargetPoint> targets{{0.0, Vec3::Zero()}};
  std::vector<WindPoint> wind;
  ControllerKind controller = ControllerKind::NlHover;
  Mode initial_mode = Mode::NlHover;  // hybrid only
  HoverGains hover;
  FlightGains flight;
  SupervisorConfig supervisor;
  ActuatorLimits limits;
  LqrDiagonalWeights lqr;
  double v_c = 20.0;
  double dt = 1e-3;
  double t_end = 10.0;
  Model model = Model::Augmented;
  std::string params_file;  // empty: built-in reference vehicle; relative paths resolve next to the scenario

  Vec3 target_at(double t) const;
  Vec3 wind_at(double t) const;
  /// Throws ParseError.
  void validate() const;
};

Scenario load_scenario(const std::string& path);
Scenario scenario_from_string(const std::string& yaml_text, const std::string& base_dir = ".");

/// Gains, LQR designs, supervisor and limits as one bundle.
ControllerSet build_controllers(const Scenario& s, const VehicleParams& params);

/// Parameters named by the scenario or the reference vehicle.
VehicleParams scenario_params(const Scenario& s);

}  // namespace tailsitter
