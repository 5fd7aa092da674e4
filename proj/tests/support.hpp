#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "tailsitter/mathkin.hpp"

namespace tailsitter::testing {

// Seeded generators for the hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Vec3 vec3(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  Vec4 vec4(double scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
  }

  UnitQuat quat() {
    Vec4 v(normal(), normal(), normal(), normal());
    while (v.norm() < 1e-6) v = Vec4(normal(), normal(), normal(), normal());
    v.normalize();
    return UnitQuat::from_vec(v);
  }

  // Tilt of at most max_angle from q.
  UnitQuat near(const UnitQuat& q, double max_angle) {
    Vec3 axis = vec3();
    if (axis.norm() < 1e-9) axis = Vec3::UnitX();
    return quat_mul(q, UnitQuat::from_axis_angle(axis.normalized(), uniform(-max_angle, max_angle)));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// |a - b| <= tol * max(1, |b|), entrywise.
inline ::testing::AssertionResult rel_close(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return ::testing::AssertionFailure() << "shape mismatch";
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(b(i, j)));
      if (!(std::abs(a(i, j) - b(i, j)) <= tol * scale))
        return ::testing::AssertionFailure() << "entry (" << i << "," << j << "): " << a(i, j) << " vs " << b(i, j);
    }
  return ::testing::AssertionSuccess();
}

}  // namespace tailsitter::testing
