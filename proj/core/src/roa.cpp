#include "tailsitter/roa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "tailsitter/errors.hpp"

namespace tailsitter {

Eigen::VectorXd roa_sample_deviation(const RoaSampling& s, int index) {
  std::mt19937_64 rng(s.seed + static_cast<std::uint64_t>(index));
  std::normal_distribution<double> n01;
  Eigen::VectorXd z(12);
  for (int i = 0; i < 12; ++i) z(i) = n01(rng);
  z.normalize();
  Eigen::VectorXd scale(12);
  scale << Vec3::Constant(s.pos_scale), Vec3::Constant(s.vel_scale), Vec3::Constant(s.att_scale),
      Vec3::Constant(s.omega_scale);
  const double r = s.radii.empty() ? 1.0 : s.radii[static_cast<std::size_t>(index) % s.radii.size()];
  return r * scale.cwiseProduct(z);
}

bool roa_converges(const Eigen::VectorXd& dx, const LqrDesign& design, const VehicleParams& params,
                   const RoaSampling& sampling, const RoaCriterion& c, const ControllerSet& base) {
  ControllerSet ctl = base;
  ctl.lqr = design;
  const EquilibriumPoint eq = hover_equilibrium(params);
  const InertialState x0 = expand_deviation(dx, eq, Layout::Hover12);
  // actuators start at the values the gain asks for, within limits
  const EffectiveCommand u0 = EffectiveCommand::from_vec(eq.u_eq.vec() - design.K * dx);
  const PhysicalCommand act = to_physical(u0, hover_actuators(params, ctl.limits), params, ctl.limits);
  SimBundle b = initial_bundle(x0, act, Mode::LinHover, params);

  const Vec3 target = Vec3::Zero();
  const double V0 = lyapunov_value(design.S, dx);
  double V_prev = V0;
  const long n = std::lround(c.t_end / sampling.dt);
  try {
    for (long k = 0; k < n; ++k) {
      const StepResult r = hybrid_step(b, sampling.dt, target, Vec3::Zero(), ControllerKind::Lqr, ctl, params);
      b = r.next;
      if (b.x.p.norm() > c.divergence_radius) return false;
      if (b.time.t > c.transient && r.V > V_prev + c.mono_rel_tol * V0 + c.mono_abs_tol) return false;
      V_prev = r.V;
    }
  } catch (const Error&) {
    return false;
  }
  return b.x.p.norm() < c.pos_tol && b.x.omega_b.norm() < c.omega_tol;
}

double roa_c_star(const std::vector<RoaSample>& samples) {
  double fail_min = std::numeric_limits<double>::infinity();
  double all_max = 0.0;
  for (const auto& s : samples) {
    all_max = std::max(all_max, s.V0);
    if (!s.converged) fail_min = std::min(fail_min, s.V0);
  }
  return std::isfinite(fail_min) ? fail_min : all_max;
}

RoaEstimate estimate_roa(const LqrDesign& design, const VehicleParams& params, const RoaSampling& sampling,
                         const RoaCriterion& criterion, const ControllerSet& base) {
  if (sampling.n_samples <= 0) throw Error("estimate_roa: n_samples must be positive");
  RoaEstimate est;
  est.samples.resize(static_cast<std::size_t>(sampling.n_samples));
  auto run = [&](int i) {
    RoaSample& s = est.samples[static_cast<std::size_t>(i)];
    s.dx = roa_sample_deviation(sampling, i);
    s.V0 = lyapunov_value(design.S, s.dx);
    s.converged = roa_converges(s.dx, design, params, sampling, criterion, base);
  };
  const int workers = std::clamp(sampling.workers, 1, sampling.n_samples);
  if (workers == 1) {
    for (int i = 0; i < sampling.n_samples; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < sampling.n_samples; i += workers) run(i);
      });
    for (auto& th : pool) th.join();
  }
  est.c_star = roa_c_star(est.samples);
  return est;
}

}  // namespace tailsitter
