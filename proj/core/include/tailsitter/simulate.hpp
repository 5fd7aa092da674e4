#pragma once

#include <vector>

#include "tailsitter/scenario.hpp"

namespace tailsitter {

/// State and command at the start of one step; u is the controller output before
/// saturation, physical the actuator values actually applied over the step.
struct LogRecord {
  double t = 0.0;
  int j = 0;
  Mode mode = Mode::NlHover;
  Vec3 p, v;
  UnitQuat q;
  Vec3 omega;
  EffectiveCommand u;
  PhysicalCommand physical;
  double V = 0.0;
  double kappa = 0.0;
  bool clipped = false;
};

struct SimResult {
  std::vector<LogRecord> log;
  std::vector<JumpRecord> jumps;
  InertialState final_state;
};

/// Deterministic fixed-step run. Throws NonFinite, DegenerateGeometry (with the time in the
/// message) and the controller errors.
SimResult run_scenario(const Scenario& s, const VehicleParams& params);
SimResult run_scenario(const Scenario& s, const VehicleParams& params, const ControllerSet& ctl);

/// 0.95 d / t_95 where t_95 is the first time the path has covered 95% of the straight-line
/// distance d from `from` to `to` (progress measured along that line). NaN if never reached.
double mean_transit_speed(const std::vector<LogRecord>& log, const Vec3& from, const Vec3& to,
                          double fraction = 0.95);

}  // namespace tailsitter
