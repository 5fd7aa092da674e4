#include <numbers>

#include <gtest/gtest.h>

#include "oracles/assembly.hpp"
#include "oracles/rational.hpp"
#include "tailsitter/vehicle.hpp"

using namespace tailsitter;
using oracle::Rational;

namespace {

// Reference vehicle constants as exact fractions; pi enters only through 2 pi + C_d0.
oracle::Constants<Rational> rational_constants(Rational pi, Rational c_y0 = 0) {
  oracle::Constants<Rational> k;
  k.S_wet = Rational(2129, 10000);
  k.S_p = Rational(3989, 10000);
  k.C_d0 = Rational(25, 1000);
  k.C_y0 = c_y0;
  k.pi = pi;
  k.xi_f = Rational(85, 100);
  k.xi_m = Rational(55, 100);
  k.delta_r = Rational(-389, 10000);
  k.a_y = Rational(-155, 1000);
  k.p_x = Rational(65, 1000);
  k.p_y = Rational(-155, 1000);
  k.b = Rational(55, 100);
  k.c = Rational(13, 100);
  k.km_over_kf = Rational(264, 10000000) / Rational(513, 1000000);
  return k;
}

oracle::Constants<double> double_constants(const VehicleParams& p) {
  return {p.S_wet, p.S_p, p.C_d0, p.C_y0, std::numbers::pi, p.xi_f, p.xi_m, p.delta_r,
          p.a_y,   p.p_x, p.p_y,  p.b,    p.c,                p.k_m / p.k_f};
}

}  // namespace

TEST(Assembly, StraightAndArchedAgreeExactly) {
  const auto k = rational_constants(Rational(355, 113));
  const auto straight = oracle::assemble(k, false);
  const auto arched = oracle::assemble(k, true);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      EXPECT_EQ(straight.F[r][c], arched.F[r][c]) << "F(" << r << "," << c << ")";
      EXPECT_EQ(straight.M[r][c], arched.M[r][c]) << "M(" << r << "," << c << ")";
    }
}

TEST(Assembly, ExactZeroPattern) {
  const auto a = oracle::assemble(rational_constants(Rational(355, 113)), true);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(a.F[1][c], Rational(0));
  EXPECT_EQ(a.F[0][2], Rational(0));
  EXPECT_EQ(a.F[2][0], Rational(0));
  EXPECT_EQ(a.M[1][0], Rational(0));
  EXPECT_EQ(a.M[2][2], Rational(0));
  // antisymmetric columns for differential terms, symmetric for collective ones
  EXPECT_EQ(a.M[0][0], -a.M[0][1]);
  EXPECT_EQ(a.M[1][2], a.M[1][3]);
  EXPECT_EQ(a.F[0][0], a.F[0][1]);
}

TEST(Assembly, SideForceOnlyChangesTheArchedTerms) {
  const auto k = rational_constants(Rational(355, 113), Rational(1, 10));
  const auto straight = oracle::assemble(k, false);
  const auto arched = oracle::assemble(k, true);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool side_force = (r == 1 && c >= 2);
      if (side_force) {
        EXPECT_FALSE(straight.F[r][c] == arched.F[r][c]);
        EXPECT_FALSE(straight.M[2][c] == arched.M[2][c]);
      } else {
        EXPECT_EQ(straight.F[r][c], arched.F[r][c]);
        if (r != 2 || c < 2) {
          EXPECT_EQ(straight.M[r][c], arched.M[r][c]);
        }
      }
    }
}

TEST(Assembly, MatchesLibraryMatricesInFloatingPoint) {
  const VehicleParams p = VehicleParams::reference();
  const InputMatrices im = input_matrices(p);
  for (bool arched : {false, true}) {
    const auto a = oracle::assemble(double_constants(p), arched);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) {
        EXPECT_NEAR(a.F[r][c], im.F(r, c), 1e-12) << "F(" << r << "," << c << ") arched=" << arched;
        EXPECT_NEAR(a.M[r][c], im.M(r, c), 1e-12) << "M(" << r << "," << c << ") arched=" << arched;
      }
  }
}

TEST(Assembly, RationalMatchesFloatingPointWithSamePi) {
  const auto exact = oracle::assemble(rational_constants(Rational(355, 113)), false);
  auto kd = double_constants(VehicleParams::reference());
  kd.pi = 355.0 / 113.0;
  const auto approx = oracle::assemble(kd, false);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(exact.F[r][c].to_double(), approx.F[r][c], 1e-12);
      EXPECT_NEAR(exact.M[r][c].to_double(), approx.M[r][c], 1e-12);
    }
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
  EXPECT_EQ(Rational(3, 7) * Rational(7, 3), Rational(1));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}
