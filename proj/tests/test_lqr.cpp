#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tailsitter/equilibria.hpp"
#include "tailsitter/errors.hpp"
#include "tailsitter/hybrid.hpp"
#include "tailsitter/integrator.hpp"
#include "tailsitter/lqr.hpp"

using namespace tailsitter;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const VehicleParams P = VehicleParams::reference();

}  // namespace

TEST(Care, Scalar) {
  const MatrixXd A = MatrixXd::Zero(1, 1), B = MatrixXd::Ones(1, 1);
  const LqrDesign d = solve_care(A, B, LqrWeights::identity(1, 1));
  EXPECT_NEAR(d.S(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(d.K(0, 0), 1.0, 1e-12);
}

TEST(Care, DoubleIntegrator) {
  MatrixXd A(2, 2), B(2, 1);
  A << 0, 1, 0, 0;
  B << 0, 1;
  const LqrDesign d = solve_care(A, B, LqrWeights::identity(2, 1));
  // closed form: S = [[sqrt3, 1], [1, sqrt3]], K = [1, sqrt3]
  EXPECT_NEAR(d.K(0, 0), 1.0, 1e-10);
  EXPECT_NEAR(d.K(0, 1), std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(d.S(0, 0), std::sqrt(3.0), 1e-10);
  EXPECT_NEAR(d.S(0, 1), 1.0, 1e-10);
}

TEST(Care, RandomSystemsSatisfyRiccati) {
  tailsitter::testing::Gen g(50);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = g.integer(2, 8), m = g.integer(1, 3);
    MatrixXd A(n, n), B(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = g.uniform(-2, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) B(i, j) = g.uniform(-1, 1);
    const LqrDesign d = solve_care(A, B, LqrWeights::identity(n, m));
    EXPECT_LT(d.care_residual, 1e-9);
    EXPECT_LT(d.spectral_abscissa(), 0.0);
    EXPECT_LT((d.S - d.S.transpose()).norm(), 1e-9 * d.S.norm());
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixXd>(d.S).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Care, UncontrollableUnstableModeIsRejected) {
  MatrixXd A(2, 2), B(2, 1);
  A << 1, 0, 0, -1;
  B << 0, 1;
  EXPECT_THROW(solve_care(A, B, LqrWeights::identity(2, 1)), NotStabilizable);
}

TEST(Lyapunov, SolvesEquation) {
  MatrixXd A(3, 3);
  A << -1, 2, 0, 0, -3, 1, 0.5, 0, -2;
  const MatrixXd Q = MatrixXd::Identity(3, 3);
  const MatrixXd X = solve_lyapunov(A, Q);
  EXPECT_LT((A.transpose() * X + X * A + Q).norm(), 1e-12);
}

TEST(HoverLqr, EtaColumnIsZeroAndLoopIsHurwitz) {
  const LinearModel lm = linearize_analytic_hover(P);
  const LqrDesign d = solve_care(lm.A, lm.B, LqrWeights::identity(12, 4));
  EXPECT_LT(d.spectral_abscissa(), 0.0);
  const MatrixXd K13 = embed_eta_column(d.K);
  ASSERT_EQ(K13.rows(), 4);
  ASSERT_EQ(K13.cols(), 13);
  EXPECT_EQ(K13.col(6).norm(), 0.0);
  EXPECT_EQ(K13.leftCols(6), d.K.leftCols(6));
  EXPECT_EQ(K13.rightCols(6), d.K.rightCols(6));
}

TEST(Integrator, Dimensions) {
  const LinearModel lm = linearize_analytic_hover(P);
  const auto [A, B] = augment_integrator(lm.A, lm.B);
  EXPECT_EQ(A.rows(), 15);
  EXPECT_EQ(B.rows(), 15);
  EXPECT_EQ(A.topLeftCorner(12, 12), lm.A);
  EXPECT_EQ(A.bottomLeftCorner(3, 3), -Eigen::Matrix3d::Identity());
  EXPECT_EQ(A.rightCols(3).norm(), 0.0);
  EXPECT_EQ(B.bottomRows(3).norm(), 0.0);
}

TEST(Integrator, ReducesToOriginalWithZeroIntegrator) {
  const LinearModel lm = linearize_analytic_hover(P);
  const auto [A, B] = augment_integrator(lm.A, lm.B);
  tailsitter::testing::Gen g(51);
  VectorXd x = VectorXd::Zero(15);
  for (int i = 0; i < 12; ++i) x(i) = g.uniform(-1, 1);
  const VectorXd u = g.vec4();
  EXPECT_LT(((A * x + B * u).head(12) - (lm.A * x.head(12) + lm.B * u)).norm(), 1e-14);
}

TEST(Integrator, RejectsConstantForceDisturbance) {
  const LinearModel lm = linearize_analytic_hover(P);
  const LqrDesign d = design_hover_lqr(P, LqrWeights::identity(15, 4), true);
  const auto [A, B] = augment_integrator(lm.A, lm.B);
  VectorXd w = VectorXd::Zero(15);
  w(3) = 0.5;  // m/s^2 on v_x
  w(5) = -0.3;
  const MatrixXd Acl = A - B * d.K;
  auto f = [&](double, const VectorXd& x) -> VectorXd { return Acl * x + w; };
  VectorXd x = VectorXd::Zero(15);
  for (int k = 0; k < 200000; ++k) x = rk4(f, 0.0, x, 1e-3);
  EXPECT_LT(x.head(3).norm(), 1e-3);
}

TEST(Lyapunov, QuadraticForm) {
  tailsitter::testing::Gen g(52);
  const LqrDesign d = design_hover_lqr(P, LqrWeights::identity(12, 4));
  EXPECT_EQ(lyapunov_value(d.S, VectorXd::Zero(12)), 0.0);
  for (int i = 0; i < 50; ++i) {
    VectorXd x(12);
    for (int j = 0; j < 12; ++j) x(j) = g.uniform(-1, 1);
    EXPECT_NEAR(lyapunov_value(d.S, 2 * x), 4 * lyapunov_value(d.S, x), 1e-10 * lyapunov_value(d.S, x));
  }
}

TEST(Lyapunov, DecreasesAlongClosedLoop) {
  const LinearModel lm = linearize_analytic_hover(P);
  const LqrWeights w = LqrWeights::identity(12, 4);
  const LqrDesign d = solve_care(lm.A, lm.B, w);
  const MatrixXd Acl = lm.A - lm.B * d.K;
  const MatrixXd rate = -(w.Q + d.K.transpose() * w.R * d.K);
  tailsitter::testing::Gen g(53);
  for (int i = 0; i < 200; ++i) {
    VectorXd x(12);
    for (int j = 0; j < 12; ++j) x(j) = g.uniform(-1, 1);
    const double vdot = 2 * x.dot(d.S * Acl * x);
    EXPECT_NEAR(vdot, x.dot(rate * x), 1e-8 * std::abs(vdot));
    EXPECT_LT(vdot, 0.0);
  }
}
