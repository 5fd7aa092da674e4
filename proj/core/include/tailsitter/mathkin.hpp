#pragma once

#include <Eigen/Dense>

namespace tailsitter {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

/// Unit quaternion, scalar first. Rotates body coordinates into inertial ones.
struct UnitQuat {
  double eta = 1.0;
  Vec3 eps = Vec3::Zero();

  UnitQuat() = default;
  UnitQuat(double eta, const Vec3& eps) : eta(eta), eps(eps) {}
  UnitQuat(double w, double x, double y, double z) : eta(w), eps(x, y, z) {}

  static UnitQuat identity() { return {}; }
  static UnitQuat from_vec(const Vec4& v) { return {v(0), v.tail<3>()}; }
  static UnitQuat from_axis_angle(const Vec3& axis, double angle);

  Vec4 vec() const { return {eta, eps.x(), eps.y(), eps.z()}; }
  double norm() const { return std::sqrt(eta * eta + eps.squaredNorm()); }
  UnitQuat normalized() const;
  UnitQuat conj() const { return {eta, -eps}; }
  UnitQuat operator-() const { return {-eta, -eps}; }
};

Mat3 skew(const Vec3& v);

/// R(q) = I + 2 eta [eps]x + 2 [eps]x^2
Mat3 rot_from_quat(const UnitQuat& q);

/// Same matrix written element by element in eta, eps1..3.
Mat3 rot_from_quat_elementwise(const UnitQuat& q);

/// Hamilton product, renormalized.
UnitQuat quat_mul(const UnitQuat& a, const UnitQuat& b);

/// Raw Hamilton product on 4-vectors, no normalization.
Vec4 quat_mul_raw(const Vec4& a, const Vec4& b);

/// qdot = 1/2 q (x) [0, omega_b]
Vec4 quat_deriv(const UnitQuat& q, const Vec3& omega_b);

/// q_ref^-1 (x) q
UnitQuat quat_error(const UnitQuat& q_ref, const UnitQuat& q);

/// Returns q or -q, whichever has eta >= 0.
UnitQuat positive_scalar(const UnitQuat& q);

/// ZYX Euler angles (roll, pitch, yaw) in rad, for plot labels only.
Vec3 euler_zyx(const UnitQuat& q);

inline double sign_pos(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace tailsitter
