#include "tailsitter/integrator.hpp"

#include <cmath>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

void check_finite(const InertialState::Vector& x, double t) {
  static const char* names[] = {"p", "p", "p", "v", "v", "v", "q", "q", "q", "q", "omega", "omega", "omega"};
  for (int i = 0; i < 13; ++i)
    if (!std::isfinite(x(i))) throw NonFinite(names[i], t);
}

}  // namespace

InertialState rk4_step(const InertialState& x, const AnyCommand& u_held, const Vec3& wind, double dt,
                       const VehicleParams& params, Model model, double t) {
  if (!(dt > 0.0)) throw Error("rk4_step: dt must be positive");
  using V = InertialState::Vector;
  auto f = [&](double, const V& s) -> V {
    return state_deriv(InertialState::from_vector(s), u_held, wind, params, model).to_vector();
  };
  const V next = rk4(f, t, x.to_vector(), dt);
  check_finite(next, t + dt);
  InertialState out = InertialState::from_vector(next);
  out.q = out.q.normalized();
  return out;
}

}  // namespace tailsitter
