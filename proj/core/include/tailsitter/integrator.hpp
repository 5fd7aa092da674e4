#pragma once

#include "tailsitter/vehicle.hpp"

namespace tailsitter {

/// Classical fourth-order step of x' = f(t, x) for any vector-space X.
template <class F, class X>
X rk4(F&& f, double t, const X& x, double dt) {
  const X k1 = f(t, x);
  const X k2 = f(t + dt / 2, X(x + dt / 2 * k1));
  const X k3 = f(t + dt / 2, X(x + dt / 2 * k2));
  const X k4 = f(t + dt, X(x + dt * k3));
  return x + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

/// RK4 on state_deriv with the command held over the step; quaternion renormalized.
/// Throws NonFinite naming the first bad component; t is only used for the message.
InertialState rk4_step(const InertialState& x, const AnyCommand& u_held, const Vec3& wind, double dt,
                       const VehicleParams& params, Model model, double t = 0.0);

}  // namespace tailsitter
