#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tailsitter/equilibria.hpp"
#include "tailsitter/errors.hpp"

using namespace tailsitter;
using tailsitter::testing::rel_close;

namespace {

const VehicleParams P = VehicleParams::reference();
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST(Hover, AttitudePointsThrustUp) {
  const UnitQuat q = hover_attitude();
  EXPECT_NEAR(std::abs(q.eta), 1 / kSqrt2, 1e-15);
  EXPECT_NEAR(std::abs(q.eps.y()), 1 / kSqrt2, 1e-15);
  EXPECT_EQ(q.eps.x(), 0.0);
  EXPECT_EQ(q.eps.z(), 0.0);
  EXPECT_LT((rot_from_quat(q) * Vec3::UnitX() - Vec3::UnitZ()).norm(), 1e-15);
}

TEST(Hover, KernelCommandBalancesWeight) {
  const EquilibriumPoint eq = hover_equilibrium(P);
  const double lambda = P.m * P.g / (2.0 * (1.0 - P.S_wet * P.C_d0 / (4.0 * P.S_p)));
  EXPECT_NEAR(eq.u_eq.u1, lambda, 1e-12);
  EXPECT_NEAR(eq.u_eq.u2, lambda, 1e-12);
  EXPECT_EQ(eq.u_eq.u3, 0.0);
  EXPECT_EQ(eq.u_eq.u4, 0.0);
  EXPECT_GT(eq.u_eq.u1, P.m * P.g / 2.0);
  // the motors pull more than the weight; drag in the slipstream takes the rest
  EXPECT_GT(eq.u_eq.u1 + eq.u_eq.u2, P.m * P.g);
  EXPECT_LT(eq.residual_norm, 1e-9);
}

TEST(Hover, EquilibriumAtTarget) {
  const EquilibriumPoint eq = hover_equilibrium(P, Vec3(1, 2, 3));
  EXPECT_EQ(eq.x_eq.p, Vec3(1, 2, 3));
  EXPECT_LT(state_deriv(eq.x_eq, eq.u_eq, Vec3::Zero(), P, Model::Simplified).norm(), 1e-9);
}

TEST(Trim, ResidualSmallWhenItConverges) {
  const EquilibriumPoint eq = trim_level_flight(P, 5.0);
  EXPECT_LT(eq.residual_norm, 1e-8);
  // position moves with the airspeed; everything else is stationary
  const StateDerivative d = state_deriv(eq.x_eq, eq.u_virtual, Vec3::Zero(), P, Model::Augmented);
  EXPECT_LT(d.v_dot.norm() + d.q_dot.norm() + d.omega_dot.norm(), 1e-8);
  EXPECT_EQ(d.p_dot, eq.x_eq.v);
}

TEST(Trim, ReferenceOperatingPoint) {
  // Reference operating point. With elevons sharing the wing lever this model cannot reach it,
  // so the test stays red.
  const EquilibriumPoint eq = trim_level_flight(P, 5.0);
  const Vec4 u = eq.u_eq.vec();
  const Vec4 reference(2.18, 2.18, 0.92, 0.92);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(u(i), reference(i), 0.1 * reference(i)) << "component " << i;
  EXPECT_NEAR(eq.x_eq.q.eta, 0.85, 0.03);
  EXPECT_NEAR(eq.x_eq.q.eps.y(), -0.52, 0.03);
}

TEST(Trim, RejectsNonPositiveAirspeed) { EXPECT_THROW(trim_level_flight(P, 0.0), Error); }

TEST(Linearize, VelocityAttitudeBlock) {
  const LinearModel lm = linearize_analytic_hover(P);
  const double g = P.g;
  EXPECT_NEAR(lm.A(3, 7), 2 * kSqrt2 * g, 1e-12);
  EXPECT_NEAR(lm.A(4, 6), -kSqrt2 * g, 1e-12);
  EXPECT_NEAR(lm.A(4, 8), kSqrt2 * g, 1e-12);
  EXPECT_EQ(lm.A(3, 6), 0.0);
  EXPECT_EQ(lm.A(3, 8), 0.0);
  EXPECT_EQ(lm.A(4, 7), 0.0);
  EXPECT_EQ(lm.A(5, 6), 0.0);
  EXPECT_EQ(lm.A(5, 8), 0.0);
}

TEST(Linearize, ReferenceVelocityAttitudeBottomRow) {
  // Reference table value -sqrt(2) g; the exact Jacobian of the thrust axis z-component is 0 at
  // hover, so this stays red.
  EXPECT_NEAR(linearize_analytic_hover(P).A(5, 7), -kSqrt2 * P.g, 1e-12);
}

TEST(Linearize, KinematicBlock) {
  const LinearModel lm = linearize_analytic_hover(P);
  const double r = kSqrt2 / 4;
  Mat3 expected;
  expected << r, 0, -r, 0, r, 0, r, 0, r;
  EXPECT_LT((lm.A.block<3, 3>(6, 9) - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE((lm.A.block<3, 3>(0, 3) == Mat3::Identity()));
}

TEST(Linearize, ThrustInputRow) {
  const LinearModel lm = linearize_analytic_hover(P);
  const double b = (1.0 - P.S_wet * P.C_d0 / (4.0 * P.S_p)) / P.m;
  EXPECT_NEAR(lm.B(5, 0), b, 1e-15);
  EXPECT_NEAR(lm.B(5, 1), b, 1e-15);
}

TEST(Linearize, KinematicRowsHaveNoInput) {
  const LinearModel lm = linearize_analytic_hover(P);
  EXPECT_EQ(lm.B.topRows(3).norm(), 0.0);
  EXPECT_EQ(lm.B.middleRows(6, 3).norm(), 0.0);
}

TEST(Linearize, AnalyticMatchesFiniteDifferences) {
  const LinearModel an = linearize_analytic_hover(P);
  const LinearModel fd = linearize_fd(P, hover_equilibrium(P), Model::Simplified);
  EXPECT_TRUE(rel_close(an.A, fd.A, 1e-6));
  EXPECT_TRUE(rel_close(an.B, fd.B, 1e-6));
}

TEST(Linearize, AugmentedAtRestMatchesSimplified) {
  const EquilibriumPoint eq = hover_equilibrium(P);
  const LinearModel s = linearize_fd(P, eq, Model::Simplified);
  const LinearModel a = linearize_fd(P, eq, Model::Augmented);
  // airspeed terms are quadratic in v, so their first-order effect vanishes at rest
  EXPECT_TRUE(rel_close(a.B, s.B, 1e-6));
  EXPECT_TRUE(rel_close(a.A.leftCols(3), s.A.leftCols(3), 1e-6));
}

TEST(Linearize, FlightLayoutShape) {
  const EquilibriumPoint eq = trim_level_flight(P, 5.0);
  const LinearModel lm = linearize_fd(P, eq, Model::Augmented, Layout::Flight10);
  EXPECT_EQ(lm.A.rows(), 10);
  EXPECT_EQ(lm.B.cols(), 4);
  EXPECT_EQ(lm.states.size(), 10u);
  EXPECT_EQ(lm.B.row(0).norm(), 0.0);
}

TEST(Deviation, RoundTrip) {
  tailsitter::testing::Gen g(40);
  const EquilibriumPoint eq = hover_equilibrium(P);
  for (int i = 0; i < 100; ++i) {
    InertialState x = eq.x_eq;
    x.p += g.vec3();
    x.v += g.vec3();
    x.q = g.near(x.q, 0.5);
    x.omega_b = g.vec3();
    const InertialState back = expand_deviation(reduced_deviation(x, eq, Layout::Hover12), eq, Layout::Hover12);
    EXPECT_LT((back.p - x.p).norm(), 1e-14);
    EXPECT_LT((rot_from_quat(back.q) - rot_from_quat(x.q)).norm(), 1e-12);
  }
}
