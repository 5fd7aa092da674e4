#pragma once

#include <cstdint>
#include <vector>

#include "tailsitter/hybrid.hpp"

namespace tailsitter {

struct RoaSampling {
  int n_samples = 100;
  /// Sample i is drawn at radii[i % radii.size()] times the block scales.
  std::vector<double> radii{0.25, 0.5, 1.0, 2.0, 4.0};
  double pos_scale = 1.0;    // m
  double vel_scale = 1.0;    // m/s
  double att_scale = 0.2;    // quaternion vector part
  double omega_scale = 1.0;  // rad/s
  std::uint64_t seed = 1;
  double dt = 1e-3;
  int workers = 1;
};

struct RoaCriterion {
  double transient = 1.0;   // s before V must decrease
  double t_end = 15.0;      // s
  double pos_tol = 0.1;     // m
  double omega_tol = 0.05;  // rad/s
  double mono_rel_tol = 1e-9;  // allowed V increase relative to V0
  double mono_abs_tol = 1e-12;  // roundoff floor near the equilibrium
  double divergence_radius = 200.0;  // m, early stop
};

struct RoaSample {
  Eigen::VectorXd dx;
  double V0 = 0.0;
  bool converged = false;
};

struct RoaEstimate {
  std::vector<RoaSample> samples;
  double c_star = 0.0;
};

/// Deviation for sample `index`; depends only on (sampling, index).
Eigen::VectorXd roa_sample_deviation(const RoaSampling& sampling, int index);

/// Closed LQR hover loop from x_eq + dx; monotone V after the transient and terminal tolerances.
bool roa_converges(const Eigen::VectorXd& dx, const LqrDesign& design, const VehicleParams& params,
                   const RoaSampling& sampling, const RoaCriterion& criterion, const ControllerSet& base = {});

/// c_star: smallest V0 among failures, or the largest V0 if every sample converged.
RoaEstimate estimate_roa(const LqrDesign& design, const VehicleParams& params, const RoaSampling& sampling,
                         const RoaCriterion& criterion = {}, const ControllerSet& base = {});

double roa_c_star(const std::vector<RoaSample>& samples);

}  // namespace tailsitter
