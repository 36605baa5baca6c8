#include <gtest/gtest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "grid.hpp"
#include "linear.hpp"

using namespace skdv;

namespace {

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double l2(std::span<const cplx> u) {
    double s = 0.0;
    for (auto z : u) s += std::norm(z);
    return std::sqrt(s);
}

FieldSpec gaussian(double c, double k = 0.0, double w = 1.0) {
    FieldSpec s;
    s.kind = FieldSpec::Kind::Gaussian;
    s.center = c;
    s.wavenumber = k;
    s.width = w;
    return s;
}

double schrodinger_error(Direction dir, int cells, double dt, double t_end) {
    auto g = build_grid(dir, 40.0, cells);
    auto s = init_state(g, gaussian(g.sigma() * 20.0, 1.0), FieldSpec{});
    auto ref = free_schrodinger_reference(g, s.u, t_end);
    SchrodingerSolver solver(g);
    int steps = static_cast<int>(std::lround(t_end / dt));
    for (int n = 0; n < steps; ++n) solver.step(s.u, dt, 0.0);
    return max_abs_diff(s.u, ref);
}

double airy_error(Direction dir, int cells, double dt, double t_end) {
    auto g = build_grid(dir, 40.0, cells);
    auto s = init_state(g, FieldSpec{}, gaussian(g.sigma() * 20.0));
    auto ref = free_airy_reference(g, s.v, t_end);
    AirySolver solver(g);
    int steps = static_cast<int>(std::lround(t_end / dt));
    for (int n = 0; n < steps; ++n) solver.step(s.v, dt, {});
    return max_abs_diff(s.v, ref);
}

}  // namespace

TEST(Schrodinger, ZeroStaysZero) {
    auto g = build_grid(Direction::Right, 10.0, 64);
    std::vector<cplx> u(g.nodes(), 0.0);
    SchrodingerSolver s(g);
    for (int i = 0; i < 5; ++i) s.step(u, 0.01, 0.0);
    for (auto z : u) EXPECT_EQ(z, cplx(0.0));
}

TEST(Schrodinger, SineModeKeepsNorm) {
    auto g = build_grid(Direction::Right, 10.0, 200);
    std::vector<cplx> u(g.nodes());
    for (int j = 0; j < g.nodes(); ++j) u[j] = std::sin(3.0 * std::numbers::pi * g.x(j) / g.length);
    double n0 = l2(u);
    SchrodingerSolver s(g);
    s.step(u, 0.05, 0.0);
    EXPECT_NEAR(l2(u) / n0, 1.0, 1e-12);
}

TEST(Schrodinger, NormDriftOverManySteps) {
    auto g = build_grid(Direction::Left, 40.0, 800);
    auto st = init_state(g, gaussian(-20.0, -2.0), FieldSpec{});
    double n0 = l2(st.u);
    SchrodingerSolver s(g);
    for (int i = 0; i < 10000; ++i) s.step(st.u, 1e-3, 0.0);
    EXPECT_LE(std::abs(l2(st.u) / n0 - 1.0), 1e-12);
}

TEST(Schrodinger, BoundaryRowImposesValue) {
    auto g = build_grid(Direction::Right, 10.0, 100);
    std::vector<cplx> u(g.nodes(), 0.0);
    SchrodingerSolver s(g);
    s.step(u, 0.01, cplx(0.3, -0.2));
    EXPECT_EQ(u[0], cplx(0.3, -0.2));
    EXPECT_EQ(u.back(), cplx(0.0));
}

TEST(Schrodinger, TimeReversal) {
    auto g = build_grid(Direction::Right, 40.0, 400);
    auto st = init_state(g, gaussian(20.0, 1.5), FieldSpec{});
    auto u0 = st.u;
    SchrodingerSolver s(g);
    for (int i = 0; i < 50; ++i) s.step(st.u, 0.01, 0.0);
    for (int i = 0; i < 50; ++i) s.step(st.u, -0.01, 0.0);
    EXPECT_LE(max_abs_diff(st.u, u0), 1e-10);
}

TEST(Schrodinger, SecondOrderAgainstWholeLine) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        double e1 = schrodinger_error(d, 400, 0.02, 0.5);
        double e2 = schrodinger_error(d, 800, 0.01, 0.5);
        double e3 = schrodinger_error(d, 1600, 0.005, 0.5);
        double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
        EXPECT_GE(p2, 1.8) << e1 << " " << e2 << " " << e3;
        EXPECT_LE(p2, 2.2);
        EXPECT_GE(p1, 1.7);
    }
}

TEST(Airy, BoundaryConditionCount) {
    EXPECT_EQ(AirySolver(build_grid(Direction::Right, 10.0, 64)).boundary_conditions_at_origin(), 1);
    EXPECT_EQ(AirySolver(build_grid(Direction::Left, 10.0, 64)).boundary_conditions_at_origin(), 2);
}

TEST(Airy, ZeroStaysZero) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        auto g = build_grid(d, 10.0, 64);
        std::vector<double> v(g.nodes(), 0.0);
        AirySolver s(g);
        for (int i = 0; i < 5; ++i) s.step(v, 0.01, {});
        for (double y : v) EXPECT_EQ(y, 0.0);
    }
}

TEST(Airy, InteriorIntegralConserved) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        auto g = build_grid(d, 40.0, 800);
        auto st = init_state(g, FieldSpec{}, gaussian(g.sigma() * 20.0));
        double before = 0.0, after = 0.0;
        for (double y : st.v) before += y;
        AirySolver s(g);
        s.step(st.v, 0.01, {});
        for (double y : st.v) after += y;
        EXPECT_LE(std::abs(after - before) * g.h, 1e-10);
    }
}

TEST(Airy, BoundaryRowsImposed) {
    auto gl = build_grid(Direction::Left, 10.0, 200);
    std::vector<double> v(gl.nodes(), 0.0);
    AirySolver s(gl);
    s.step(v, 0.01, {0.2, -0.4});
    EXPECT_NEAR(v[0], 0.2, 1e-15);
    double vx = gl.sigma() * (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * gl.h);
    EXPECT_NEAR(vx, -0.4, 1e-12);
    auto gr = build_grid(Direction::Right, 10.0, 200);
    std::vector<double> w(gr.nodes(), 0.0);
    AirySolver r(gr);
    r.step(w, 0.01, {0.2, 0.0});
    EXPECT_NEAR(w[0], 0.2, 1e-15);
}

TEST(Airy, TimeReversal) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        auto g = build_grid(d, 40.0, 400);
        auto st = init_state(g, FieldSpec{}, gaussian(g.sigma() * 20.0));
        auto v0 = st.v;
        AirySolver s(g);
        for (int i = 0; i < 50; ++i) s.step(st.v, 0.01, {});
        for (int i = 0; i < 50; ++i) s.step(st.v, -0.01, {});
        EXPECT_LE(max_abs_diff(st.v, v0), 1e-10);
    }
}

TEST(Airy, SecondOrderAgainstWholeLine) {
    for (Direction d : {Direction::Right, Direction::Left}) {
        double e1 = airy_error(d, 400, 0.01, 0.25);
        double e2 = airy_error(d, 800, 0.005, 0.25);
        double e3 = airy_error(d, 1600, 0.0025, 0.25);
        double p2 = std::log2(e2 / e3);
        EXPECT_GE(p2, 1.8) << e1 << " " << e2 << " " << e3;
        EXPECT_LE(p2, 2.2);
    }
}

TEST(Airy, LongRunStaysBounded) {
    // Boundary closures must not introduce growing modes.
    for (Direction d : {Direction::Right, Direction::Left}) {
        auto g = build_grid(d, 20.0, 400);
        auto st = init_state(g, FieldSpec{}, gaussian(g.sigma() * 3.0));
        double n0 = 0.0;
        for (double y : st.v) n0 += y * y;
        AirySolver s(g);
        double peak = n0;
        for (int i = 0; i < 20000; ++i) {
            s.step(st.v, 2.5e-3, {});
            if (i % 100 == 0) {
                double n = 0.0;
                for (double y : st.v) n += y * y;
                peak = std::max(peak, n);
            }
        }
        EXPECT_LE(peak, 1.05 * n0) << direction_name(d);
    }
}

TEST(FreeReference, IdentityAtTimeZero) {
    auto g = build_grid(Direction::Right, 40.0, 400);
    auto st = init_state(g, gaussian(20.0, 1.0), gaussian(20.0));
    EXPECT_EQ(free_schrodinger_reference(g, st.u, 0.0), st.u);
    EXPECT_EQ(free_airy_reference(g, st.v, 0.0), st.v);
}

TEST(FreeReference, DispersedGaussian) {
    LineSamples<cplx> u0{-40.0, 0.05, {}};
    for (int k = 0; k <= 1600; ++k) {
        double x = u0.x0 + k * u0.h;
        u0.values.push_back(std::exp(-x * x));
    }
    const double t = 0.7;
    auto u = free_schrodinger(u0, t);
    double err = 0.0;
    for (int k = 0; k <= 1600; ++k) {
        double x = u0.x0 + k * u0.h;
        cplx d = 1.0 + cplx(0.0, 4.0 * t);
        cplx exact = std::exp(-x * x / d) / std::sqrt(d);
        err = std::max(err, std::abs(u.values[k] - exact));
    }
    EXPECT_LE(err, 1e-8);
}

TEST(FreeReference, NormPreserved) {
    LineSamples<cplx> u0{-20.0, 0.1, {}};
    // The Airy window is wider because high frequencies travel at speed 3 xi^2.
    LineSamples<double> v0{-150.0, 0.1, {}};
    for (int k = 0; k <= 400; ++k) {
        double x = u0.x0 + k * u0.h;
        u0.values.push_back(std::exp(-x * x / 4.0) * std::polar(1.0, 0.3 * x) * (1.0 + 0.5 * std::sin(3 * x)));
    }
    for (int k = 0; k <= 3000; ++k) {
        double x = v0.x0 + k * v0.h;
        v0.values.push_back(std::exp(-x * x / 2.0) * std::cos(2.0 * x));
    }
    auto u = free_schrodinger(u0, 0.3);
    auto v = free_airy(v0, 0.3);
    double a = 0, b = 0, c = 0, d = 0;
    for (auto z : u0.values) a += std::norm(z);
    for (auto z : u.values) b += std::norm(z);
    for (auto z : v0.values) c += z * z;
    for (auto z : v.values) d += z * z;
    EXPECT_NEAR(b / a, 1.0, 1e-12);
    EXPECT_NEAR(d / c, 1.0, 1e-12);
}

TEST(FreeReference, NarrowGaussianMatchesAiryKernel) {
    // v0 = heat kernel of variance eps^2/2 at x = 0; exact solution is the heat
    // flow of the Airy fundamental solution: a^{-1} e^{tau y + 2 tau^3/3} Ai(y + tau^2)
    // with a = (3t)^{1/3}, y = x/a, tau = eps^2/(4a^2).
    const double eps = 0.3, t = 1.0;
    LineSamples<double> v0{-400.0, 0.02, {}};
    const int n = 40001;
    for (int k = 0; k < n; ++k) {
        double x = v0.x0 + k * v0.h;
        v0.values.push_back(std::exp(-x * x / (eps * eps)) / (eps * std::sqrt(std::numbers::pi)));
    }
    auto v = free_airy(v0, t, 8);
    const double a = std::cbrt(3.0 * t), tau = eps * eps / (4.0 * a * a);
    double err = 0.0;
    for (int k = 0; k < n; ++k) {
        double x = v0.x0 + k * v0.h;
        if (x < -20.0 || x > 10.0) continue;
        double y = x / a;
        double exact = std::exp(tau * y + 2.0 * tau * tau * tau / 3.0) *
                       boost::math::airy_ai(y + tau * tau) / a;
        err = std::max(err, std::abs(v.values[k] - exact));
    }
    EXPECT_LE(err, 1e-8);
}

TEST(FreeReference, SupportCheck) {
    LineSamples<cplx> u0{0.0, 0.1, std::vector<cplx>(100, 1.0)};
    EXPECT_THROW(free_schrodinger(u0, 0.1), RangeError);
}
