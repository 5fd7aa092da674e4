#include "tailsitter/mathkin.hpp"

#include <algorithm>
#include <cmath>

namespace tailsitter {

UnitQuat UnitQuat::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n == 0.0) return identity();
  return {std::cos(angle / 2.0), axis / n * std::sin(angle / 2.0)};
}

UnitQuat UnitQuat::normalized() const {
  const double n = norm();
  return {eta / n, eps / n};
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Mat3 rot_from_quat(const UnitQuat& q) {
  const Mat3 e = skew(q.eps);
  return Mat3::Identity() + 2.0 * q.eta * e + 2.0 * e * e;
}

Mat3 rot_from_quat_elementwise(const UnitQuat& q) {
  const double h = q.eta, a = q.eps.x(), b = q.eps.y(), c = q.eps.z();
  Mat3 r;
  r << h * h + a * a - b * b - c * c, 2 * a * b - 2 * h * c, 2 * h * b + 2 * a * c,
       2 * h * c + 2 * a * b, h * h - a * a + b * b - c * c, 2 * b * c - 2 * h * a,
       2 * a * c - 2 * h * b, 2 * h * a + 2 * b * c, h * h - a * a - b * b + c * c;
  return r;
}

Vec4 quat_mul_raw(const Vec4& a, const Vec4& b) {
  const double aw = a(0), bw = b(0);
  const Vec3 av = a.tail<3>(), bv = b.tail<3>();
  Vec4 out;
  out(0) = aw * bw - av.dot(bv);
  out.tail<3>() = aw * bv + bw * av + av.cross(bv);
  return out;
}

UnitQuat quat_mul(const UnitQuat& a, const UnitQuat& b) {
  return UnitQuat::from_vec(quat_mul_raw(a.vec(), b.vec())).normalized();
}

Vec4 quat_deriv(const UnitQuat& q, const Vec3& omega_b) {
  Vec4 w;
  w << 0.0, omega_b;
  return 0.5 * quat_mul_raw(q.vec(), w);
}

UnitQuat quat_error(const UnitQuat& q_ref, const UnitQuat& q) {
  return quat_mul(q_ref.conj(), q);
}

UnitQuat positive_scalar(const UnitQuat& q) { return q.eta < 0.0 ? -q : q; }

Vec3 euler_zyx(const UnitQuat& q) {
  const Mat3 r = rot_from_quat(q);
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  const double roll = std::atan2(r(2, 1), r(2, 2));
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  return {roll, pitch, yaw};
}

}  // namespace tailsitter
