#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"
#include "tailsitter/errors.hpp"
#include "tailsitter/simharness.hpp"

using namespace tailsitter;

namespace {

const VehicleParams P = VehicleParams::reference();

SupervisorConfig cfg() {
  SupervisorConfig c;
  c.d_flight = 50.0;
  return c;
}

ControllerSet hover_set(const VehicleParams& params) {
  ControllerSet c;
  c.lqr = design_hover_lqr(params, LqrDiagonalWeights{}.hover());
  c.lqi = design_hover_lqr(params, LqrDiagonalWeights{}.integral(), true);
  c.model = Model::Simplified;
  return c;
}

InertialState at_hover(const Vec3& p) {
  InertialState x;
  x.p = p;
  x.q = hover_attitude();
  return x;
}

}  // namespace

TEST(Supervisor, HysteresisBand) {
  const SupervisorConfig c = cfg();
  EXPECT_EQ(supervisor_jump(Mode::NlHover, 249.0, 1.0, 0.0, c), Mode::LinHover);
  EXPECT_EQ(supervisor_jump(Mode::NlHover, 300.0, 1.0, 0.0, c), Mode::NlHover);
  EXPECT_EQ(supervisor_jump(Mode::LinHover, 300.0, 1.0, 0.0, c), Mode::LinHover);
  EXPECT_EQ(supervisor_jump(Mode::LinHover, 450.0, 1.0, 0.0, c), Mode::NlHover);
  EXPECT_EQ(supervisor_jump(Mode::LinHover, 400.0, 1.0, 0.0, c), Mode::LinHover);
}

TEST(Supervisor, FlightByDistance) {
  const SupervisorConfig c = cfg();
  EXPECT_EQ(supervisor_jump(Mode::NlHover, 1e6, 60.0, 3.0, c), Mode::Flight);
  EXPECT_EQ(supervisor_jump(Mode::LinHover, 10.0, 60.0, 3.0, c), Mode::Flight);
  // needs some forward speed for a line-of-sight error
  EXPECT_EQ(supervisor_jump(Mode::NlHover, 1e6, 60.0, 0.1, c), Mode::NlHover);
  EXPECT_EQ(supervisor_jump(Mode::Flight, 1e6, 60.0, 20.0, c), Mode::Flight);
  EXPECT_EQ(supervisor_jump(Mode::Flight, 1e6, 50.0, 20.0, c), Mode::NlHover);
}

TEST(Supervisor, NoImmediateReturn) {
  tailsitter::testing::Gen g(90);
  const SupervisorConfig c = cfg();
  for (int i = 0; i < 2000; ++i) {
    const Mode m = static_cast<Mode>(g.integer(0, 2));
    const double V = g.uniform(0, 800), d = g.uniform(0, 100), s = g.uniform(0, 30);
    const Mode to = supervisor_jump(m, V, d, s, c);
    if (to != m) {
      EXPECT_NE(supervisor_jump(to, V, d, s, c), m) << mode_name(m) << " -> " << mode_name(to);
    }
  }
}

TEST(Supervisor, Validation) {
  SupervisorConfig c;
  EXPECT_NO_THROW(c.validate());
  c.v_enter = 500.0;
  EXPECT_THROW(c.validate(), ParseError);
}

TEST(Names, RoundTrip) {
  for (auto k : {ControllerKind::NlHover, ControllerKind::Lqr, ControllerKind::LqrInt, ControllerKind::Flight,
                 ControllerKind::Hybrid})
    EXPECT_EQ(controller_from_name(controller_name(k)), k);
  EXPECT_THROW(controller_from_name("pid"), ParseError);
  EXPECT_EQ(mode_name(Mode::LinHover), "LIN_HOVER");
}

TEST(HybridStep, LyapunovVanishesAtTarget) {
  const ControllerSet c = hover_set(P);
  EXPECT_NEAR(hover_lyapunov(at_hover(Vec3(3, 2, 1)), Vec3(3, 2, 1), c.lqr, P), 0.0, 1e-20);
  EXPECT_GT(hover_lyapunov(at_hover(Vec3(3, 2, 1)), Vec3::Zero(), c.lqr, P), 0.0);
}

TEST(HybridStep, TimeAdvancesAndJumpCounts) {
  const ControllerSet c = hover_set(P);
  SimBundle b = initial_bundle(at_hover(Vec3::Zero()), hover_actuators(P), Mode::NlHover, P);
  // close to the target: the first step must switch to the linear controller
  const StepResult r = hybrid_step(b, 1e-3, Vec3(0.1, 0, 0), Vec3::Zero(), ControllerKind::Hybrid, c, P);
  ASSERT_TRUE(r.jump.has_value());
  EXPECT_EQ(r.jump->from, Mode::NlHover);
  EXPECT_EQ(r.jump->to, Mode::LinHover);
  EXPECT_EQ(r.next.time.j, 1);
  EXPECT_DOUBLE_EQ(r.next.time.t, 1e-3);
  const StepResult r2 = hybrid_step(r.next, 1e-3, Vec3(0.1, 0, 0), Vec3::Zero(), ControllerKind::Hybrid, c, P);
  EXPECT_FALSE(r2.jump.has_value());
  EXPECT_EQ(r2.next.time.j, 1);
  EXPECT_DOUBLE_EQ(r2.next.time.t, 2e-3);
}

TEST(HybridStep, FixedControllersNeverJump) {
  const ControllerSet c = hover_set(P);
  SimBundle b = initial_bundle(at_hover(Vec3::Zero()), hover_actuators(P), Mode::NlHover, P);
  for (int k = 0; k < 200; ++k) {
    const StepResult r = hybrid_step(b, 1e-3, Vec3(0.1, 0, 0), Vec3::Zero(), ControllerKind::NlHover, c, P);
    EXPECT_FALSE(r.jump.has_value());
    b = r.next;
  }
  EXPECT_EQ(b.time.j, 0);
}

TEST(HybridStep, RejectsBadStep) {
  const ControllerSet c = hover_set(P);
  const SimBundle b = initial_bundle(at_hover(Vec3::Zero()), hover_actuators(P), Mode::NlHover, P);
  EXPECT_THROW(hybrid_step(b, 0.0, Vec3::Zero(), Vec3::Zero(), ControllerKind::Lqr, c, P), Error);
}

TEST(HandOff, ReinitializesTheIncomingController) {
  InertialState x = at_hover(Vec3(1, 2, 3));
  x.q = quat_mul(x.q, UnitQuat::from_axis_angle(Vec3::UnitY(), 0.2));
  SimBundle b = initial_bundle(x, hover_actuators(P), Mode::LinHover, P);
  b.lqi_integral = Vec3(1, 1, 1);
  const SimBundle nl = hand_off(b, Mode::NlHover, P);
  EXPECT_EQ(nl.mode, Mode::NlHover);
  EXPECT_EQ(nl.hover.q_d.vec(), x.q.vec());
  EXPECT_NEAR(nl.hover.f, P.m * P.g, 0.05 * P.m * P.g);
  const SimBundle lin = hand_off(b, Mode::LinHover, P);
  EXPECT_EQ(lin.lqi_integral, Vec3::Zero());
  const SimBundle fl = hand_off(b, Mode::Flight, P);
  EXPECT_EQ(fl.flight.pid_integral, 0.0);
  EXPECT_FALSE(fl.flight.primed);
}

class HybridScenario : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const Scenario s = load_scenario(TAILSITTER_SCENARIO_DIR "/hybrid_51.yaml");
    result_ = new SimResult(run_scenario(s, scenario_params(s)));
  }
  static void TearDownTestSuite() { delete result_; }
  static SimResult* result_;
};
SimResult* HybridScenario::result_ = nullptr;

TEST_F(HybridScenario, SwitchesToLinearNearTheTarget) {
  int nl_to_lin = 0;
  for (const JumpRecord& j : result_->jumps)
    if (j.from == Mode::NlHover && j.to == Mode::LinHover) {
      ++nl_to_lin;
      EXPECT_LT(j.V, 250.0);
    }
  EXPECT_GE(nl_to_lin, 1);
}

TEST_F(HybridScenario, NoChattering) {
  const auto& jumps = result_->jumps;
  for (std::size_t i = 1; i < jumps.size(); ++i) EXPECT_GE(jumps[i].t - jumps[i - 1].t, 0.5);
}

TEST_F(HybridScenario, HybridTimeIsOrdered) {
  const auto& log = result_->log;
  for (std::size_t i = 1; i < log.size(); ++i) {
    EXPECT_GT(log[i].t, log[i - 1].t);
    EXPECT_TRUE(log[i].j == log[i - 1].j || log[i].j == log[i - 1].j + 1);
  }
  for (std::size_t i = 0; i < result_->jumps.size(); ++i) EXPECT_EQ(result_->jumps[i].j, static_cast<int>(i) + 1);
}

TEST_F(HybridScenario, ReferenceChangeLeavesTheLinearMode) {
  bool left = false;
  for (const JumpRecord& j : result_->jumps)
    if (j.t >= 100.0 && j.t < 101.0 && j.from == Mode::LinHover && j.to == Mode::NlHover) left = true;
  EXPECT_TRUE(left);
}

TEST_F(HybridScenario, ReachesBothTargets) {
  EXPECT_LT(result_->final_state.p.norm(), 0.5);
  double best = 1e9;
  for (const LogRecord& r : result_->log)
    if (r.t < 100.0) best = std::min(best, (r.p - Vec3(100, 100, 50)).norm());
  EXPECT_LT(best, 0.5);
}
