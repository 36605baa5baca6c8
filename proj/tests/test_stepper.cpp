#include <gtest/gtest.h>

#include <cmath>

#include "errors.hpp"
#include "stepper.hpp"

using namespace skdv;

namespace {

FieldState gaussian_state(const HalfLineGrid& g, double c, double k, double v_value) {
    FieldState s;
    for (int j = 0; j < g.nodes(); ++j) {
        const double x = g.x(j);
        s.u.push_back(std::polar(std::exp(-(x - c) * (x - c)), k * x));
        s.v.push_back(v_value);
    }
    s.u[0] = 0.0;
    return s;
}

SimConfig small_config(Direction d) {
    SimConfig c;
    c.direction = d;
    c.length = 30.0;
    c.cells = 512;
    c.dt = 1e-3;
    c.t_final = 0.2;
    c.stride = 10;
    c.coupling = d == Direction::Right ? CouplingParams{1.0, 1.0, 1.0} : CouplingParams{1.0, 2.0, -1.0};
    c.u0.kind = FieldSpec::Kind::Gaussian;
    c.u0.center = d == Direction::Right ? 10.0 : -10.0;
    c.u0.wavenumber = d == Direction::Right ? 1.0 : -1.0;
    return c;
}

}  // namespace

TEST(Stepper, ZeroStateStaysZero) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        auto g = build_grid(d, 20.0, 256);
        CoupledStepper st(g, {1.0, 1.0, 1.0}, {});
        FieldState s;
        s.u.assign(g.nodes(), 0.0);
        s.v.assign(g.nodes(), 0.0);
        for (int n = 0; n < 20; ++n) st.step(s, 0.01);
        for (int j = 0; j < g.nodes(); ++j) {
            EXPECT_EQ(s.u[j], cplx(0.0));
            EXPECT_EQ(s.v[j], 0.0);
        }
        EXPECT_NEAR(s.t, 0.2, 1e-14);
    }
}

TEST(Stepper, ConstantPotentialRotatesPhaseOnly) {
    auto g = build_grid(Direction::Right, 30.0, 300);
    const double alpha = 0.7, c = 1.3, tau = 0.05;
    CoupledStepper st(g, {alpha, 0.0, 0.0}, {});
    FieldState s = gaussian_state(g, 10.0, 2.0, c);
    const FieldState before = s;
    st.nonlinear_substep(s, tau);
    const cplx phase = std::polar(1.0, -alpha * c * tau);
    for (int j = 1; j < g.nodes() - 1; ++j) {
        EXPECT_NEAR(std::abs(s.u[j]), std::abs(before.u[j]), 1e-15);
        EXPECT_NEAR(std::abs(s.u[j] - before.u[j] * phase), 0.0, 1e-15);
        EXPECT_NEAR(s.v[j], c, 1e-15);
    }
}

TEST(Stepper, NoCouplingAndConstantVIsIdentity) {
    auto g = build_grid(Direction::Left, 30.0, 300);
    CoupledStepper st(g, {0.0, 0.0, 0.0}, {});
    FieldState s = gaussian_state(g, -12.0, -1.0, 0.0);
    const FieldState before = s;
    st.nonlinear_substep(s, 0.1);
    for (int j = 0; j < g.nodes(); ++j) {
        EXPECT_EQ(s.u[j], before.u[j]);
        EXPECT_EQ(s.v[j], before.v[j]);
    }
}

TEST(Stepper, LinearFlowIsTimeReversible) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        auto g = build_grid(d, 30.0, 600);
        CoupledStepper st(g, {0.0, 0.0, 1.0}, {});
        FieldState s = gaussian_state(g, d == Direction::Right ? 12.0 : -12.0, 1.5, 0.0);
        for (int j = 0; j < g.nodes(); ++j) s.v[j] = std::exp(-std::pow(g.x(j) - g.sigma() * 12.0, 2));
        const FieldState before = s;
        st.linear_step(s, 0.01);
        st.linear_step(s, -0.01);
        for (int j = 0; j < g.nodes(); ++j) {
            EXPECT_NEAR(std::abs(s.u[j] - before.u[j]), 0.0, 1e-10);
            EXPECT_NEAR(s.v[j], before.v[j], 1e-10);
        }
    }
}

TEST(Stepper, BoundaryRowsFollowSignals) {
    SimConfig c = small_config(Direction::Left);
    c.u0.kind = FieldSpec::Kind::Zero;
    c.signals.f.kind = SignalSpec::Kind::T2Exp;
    c.signals.f.amplitude = cplx(1.0, 0.5);
    c.signals.g.kind = SignalSpec::Kind::T2Exp;
    c.signals.h.kind = SignalSpec::Kind::T2Exp;
    auto g = build_grid(c.direction, c.length, c.cells);
    CoupledStepper st(g, c.coupling, c.signals);
    FieldState s = init_state(g, c.u0, c.v0, &c.signals);
    for (int n = 0; n < 50; ++n) {
        st.step(s, c.dt);
        EXPECT_NEAR(std::abs(s.u[0] - c.signals.f(s.t)), 0.0, 1e-13);
        EXPECT_NEAR(s.v[0], c.signals.g(s.t).real(), 1e-13);
    }
}

TEST(Stepper, MassConservedWithVanishingData) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        const RunResult r = run(small_config(d));
        ASSERT_EQ(r.status, RunStatus::Completed);
        const double m0 = r.series.snapshots.front().f.M;
        for (const auto& sn : r.series.snapshots) EXPECT_NEAR(sn.f.M, m0, 1e-11 * m0) << direction_name(d);
        EXPECT_LT(r.residuals.r_mass, 1e-10);
    }
}

TEST(Run, ZeroFinalTimeGivesSingleRecord) {
    SimConfig c = small_config(Direction::Right);
    c.t_final = 0.0;
    const RunResult r = run(c);
    ASSERT_EQ(r.residuals.records.size(), 1u);
    EXPECT_EQ(r.residuals.records[0].t, 0.0);
    EXPECT_EQ(r.residuals.r_moment, 0.0);
}

TEST(Run, LastStepLandsOnFinalTime) {
    SimConfig c = small_config(Direction::Right);
    c.t_final = 0.0105;
    const RunResult r = run(c);
    EXPECT_DOUBLE_EQ(r.final_state.t, 0.0105);
    EXPECT_DOUBLE_EQ(r.residuals.records.back().t, 0.0105);
}

TEST(Run, CoarseStepWithStrongNonlinearityHalts) {
    SimConfig c = small_config(Direction::Right);
    c.v0.kind = FieldSpec::Kind::Gaussian;
    c.v0.amplitude = 2000.0;
    c.v0.center = 10.0;
    c.dt = 0.05;
    c.t_final = 5.0;
    const RunResult r = run(c);
    ASSERT_EQ(r.status, RunStatus::Halted);
    EXPECT_GE(r.halt_time, 0.0);  // last time with finite values
    EXPECT_LT(r.halt_time, c.t_final);
    EXPECT_FALSE(r.halt_reason.empty());
    EXPECT_TRUE(all_finite(r.final_state));
    EXPECT_FALSE(r.residuals.records.empty());
}

TEST(Run, RejectsBadConfigurations) {
    SimConfig c = small_config(Direction::Right);
    c.dt = 0.0;
    EXPECT_THROW(run(c), ConfigError);
    c = small_config(Direction::Right);
    c.stride = 0;
    EXPECT_THROW(run(c), ConfigError);
    c = small_config(Direction::Right);
    c.length = 12.0;  // the packet at x = 10 touches the outer band
    EXPECT_THROW(run(c), ConfigError);
    c = small_config(Direction::Right);
    c.signals.h.kind = SignalSpec::Kind::T2Exp;
    EXPECT_THROW(run(c), ConfigError);
    c = small_config(Direction::Right);
    c.u0.center = 0.0;
    c.u0.wavenumber = 0.0;
    EXPECT_THROW(run(c), ConfigError) << "u0(0) = 1 is incompatible with f = 0";
}
