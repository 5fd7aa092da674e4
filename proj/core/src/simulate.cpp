#include "tailsitter/simulate.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "tailsitter/errors.hpp"

namespace tailsitter {

SimResult run_scenario(const Scenario& s, const VehicleParams& params) {
  return run_scenario(s, params, build_controllers(s, params));
}

SimResult run_scenario(const Scenario& s, const VehicleParams& params, const ControllerSet& ctl) {
  s.validate();
  const PhysicalCommand act0 = s.initial_actuators.value_or(hover_actuators(params, s.limits));
  Mode mode0 = s.initial_mode;
  if (s.controller == ControllerKind::Flight) mode0 = Mode::Flight;
  if (s.controller == ControllerKind::Lqr || s.controller == ControllerKind::LqrInt) mode0 = Mode::LinHover;
  SimBundle b = initial_bundle(s.initial, act0, mode0, params);

  const long n = std::lround(s.t_end / s.dt);
  SimResult out;
  out.log.reserve(static_cast<std::size_t>(n));
  spdlog::debug("scenario '{}': {} steps, controller {}", s.name, n, controller_name(s.controller));

  for (long k = 0; k < n; ++k) {
    const double t = k * s.dt;
    b.time.t = t;
    const Vec3 target = s.target_at(t);
    StepResult r;
    try {
      r = hybrid_step(b, s.dt, target, s.wind_at(t), s.controller, ctl, params);
    } catch (const DegenerateGeometry& e) {
      throw DegenerateGeometry(std::string(e.what()) + " at t=" + std::to_string(t));
    }

    LogRecord rec;
    rec.t = t;
    rec.j = b.time.j;
    rec.mode = r.flow_mode;
    rec.p = b.x.p;
    rec.v = b.x.v;
    rec.q = b.x.q;
    rec.omega = b.x.omega_b;
    rec.u = r.u_cmd;
    rec.physical = r.next.actuators;
    rec.V = hover_lyapunov(b.x, target, ctl.lqr, params);
    rec.kappa = r.kappa;
    rec.clipped = r.clipped;
    out.log.push_back(rec);

    if (r.jump) {
      out.jumps.push_back(*r.jump);
      spdlog::info("t={:.3f} jump {} {} -> {} (V={:.1f})", r.jump->t, r.jump->j, mode_name(r.jump->from),
                   mode_name(r.jump->to), r.jump->V);
    }
    b = r.next;
  }
  out.final_state = b.x;
  return out;
}

double mean_transit_speed(const std::vector<LogRecord>& log, const Vec3& from, const Vec3& to, double fraction) {
  const Vec3 d = to - from;
  const double dist = d.norm();
  if (dist == 0.0 || log.empty()) return std::nan("");
  const Vec3 u = d / dist;
  for (const auto& r : log)
    if ((r.p - from).dot(u) >= fraction * dist) return r.t > log.front().t ? fraction * dist / (r.t - log.front().t) : std::nan("");
  return std::nan("");
}

}  // namespace tailsitter
