#include <gtest/gtest.h>

#include <cmath>

#include "pdeseries/diffusion.hpp"
#include "pdeseries/evolution.hpp"
#include "pdeseries/funcalg.hpp"
#include "pdeseries/verify.hpp"

using namespace pdeseries;

namespace {

EvolutionProblem example1() {
    EvolutionProblem p;
    p.b[1] = -0.5;
    p.c = 1.0;
    p.mixed_order = 2;
    p.initial = parse("x");
    return p;
}

EvolutionProblem example2() {
    EvolutionProblem p;
    p.a[1] = -1.0;
    p.c = 2.0;
    p.mixed_order = 2;
    p.initial = parse("exp(-x)");
    return p;
}

GridSpec line_grid(double t_lo, double t_hi) {
    GridSpec g = GridSpec::evolution_default();
    g.t = {t_lo, t_hi, 11};
    return g;
}

}  // namespace

TEST(FdEvolution, ExactSolutionsHaveSmallResiduals) {
    Field geometric = [](const RealPoint& p) { return p[0] / (1 + p[3]); };
    ResidualReport r1 = fd_residual_evolution(geometric, example1(), line_grid(0.05, 0.2));
    EXPECT_LT(r1.max_abs, 1e-6);
    EXPECT_LE(r1.rms, r1.max_abs);
    EXPECT_EQ(r1.order_used, -1);

    Field decay = [](const RealPoint& p) { return std::exp(-p[3] - p[0]); };
    EXPECT_LT(fd_residual_evolution(decay, example2(), line_grid(0.05, 0.2)).max_abs, 1e-6);

    Field zero = [](const RealPoint&) { return FdReal{0}; };
    EXPECT_EQ(fd_residual_evolution(zero, example2()).max_abs, 0.0);
    EXPECT_EQ(fd_residual_evolution(zero, example1()).max_abs, 0.0);
}

TEST(FdEvolution, WrongCandidateIsDetected) {
    Field wrong = [](const RealPoint& p) { return std::exp(-p[0]) * (1 - 0.5 * p[3]); };
    ResidualReport r = fd_residual_evolution(wrong, example2());
    EXPECT_GT(r.max_abs, 1e-2);
    EXPECT_GE(r.worst_point[3], 0.05);
}

TEST(FdEvolution, FourthOrderStencil) {
    EvolutionProblem p;
    p.a[4] = -2.0;
    p.c = 1.0;
    p.mixed_order = 2;
    Field u = [](const RealPoint& q) { return std::exp(-q[3]) * std::sin(q[0]); };
    EXPECT_LT(fd_residual_evolution(u, p).max_abs, 1e-5);
}

TEST(FdEvolution, StencilConvergesAtSecondOrder) {
    Field u = [](const RealPoint& p) { return p[0] / (1 + p[3]); };
    GridSpec coarse = line_grid(0.05, 0.2);
    coarse.h_x = coarse.h_t = 2e-2;
    GridSpec fine = coarse;
    fine.h_x = fine.h_t = 1e-2;
    double rc = fd_residual_evolution(u, example1(), coarse).max_abs;
    double rf = fd_residual_evolution(u, example1(), fine).max_abs;
    EXPECT_GT(rc / rf, 3.5);
    EXPECT_LT(rc / rf, 4.5);
}

TEST(FdEvolution, GridErrors) {
    Field u = [](const RealPoint& p) { return p[0]; };
    GridSpec g = GridSpec::evolution_default();
    g.t = {0.0, 0.2, 5};
    EXPECT_THROW(fd_residual_evolution(u, example1(), g), StencilOutOfRangeError);
    g = GridSpec::evolution_default();
    g.x.count = 2;
    EXPECT_THROW(fd_residual_evolution(u, example1(), g), ProblemError);
    g = GridSpec::evolution_default();
    g.h_x = 0.0;
    EXPECT_THROW(fd_residual_evolution(u, example1(), g), ProblemError);
}

TEST(FdHeat, ExactSolutions) {
    const double a2 = 0.7;
    Field u = [a2](const RealPoint& p) {
        return std::exp(-3 * a2 * p[3]) * std::sin(p[0]) * std::sin(p[1]) * std::sin(p[2]);
    };
    EXPECT_LT(fd_residual_heat(u, a2).max_abs, 1e-5);

    Field constant = [](const RealPoint&) { return FdReal{4}; };
    EXPECT_EQ(fd_residual_heat(constant, a2).max_abs, 0.0);

    const double nu = 0.1;
    Field vort = [nu](const RealPoint& p) { return std::exp(-2 * nu * p[3]) * std::cos(p[1]) * std::cos(p[2]); };
    EXPECT_LT(fd_residual_heat(vort, nu).max_abs, 1e-5);
}

TEST(FdHeat, SourceTerm) {
    // u = t sin x solves u_t - u_xx = sin x + t sin x.
    Field u = [](const RealPoint& p) { return p[3] * std::sin(p[0]); };
    Field f = [](const RealPoint& p) { return (1 + p[3]) * std::sin(p[0]); };
    GridSpec g = GridSpec::heat_default();
    g.y.count = g.z.count = 3;
    EXPECT_LT(fd_residual_heat(u, 1.0, g, f).max_abs, 1e-6);
    EXPECT_GT(fd_residual_heat(u, 1.0, g).max_abs, 0.5);
}

TEST(FdRadial, ExactAndGuarded) {
    const double a2 = 0.5, k = 1.5;
    Field temp = [=](const RealPoint& p) { return std::exp(-a2 * k * k * p[3]) * std::sin(k * p[0]) / p[0]; };
    EXPECT_LT(fd_residual_radial(temp, a2).max_abs, 1e-5);
    GridSpec g = GridSpec::radial_default();
    g.x.lo = 0.0;
    EXPECT_THROW(fd_residual_radial(temp, a2, g), StencilOutOfRangeError);
}

TEST(FdInitial, Examples) {
    EvolutionProblem p = example1();
    SeriesSolution s = solve_series(p, 8);
    Field u = [&](const RealPoint& q) { return s.evaluate(q, 8).real(); };
    Field h = [](const RealPoint& q) { return q[0]; };
    EXPECT_EQ(fd_check_initial(u, h, GridSpec::evolution_default()).max_abs, 0.0);

    HeatProblem hp{0.4, parse("sin(x)*cos(y)")};
    SeriesSolution hs = heat_series(hp, 0);
    Field v = [&](const RealPoint& q) { return hs.evaluate(q, 0).real(); };
    Field v0 = [&](const RealPoint& q) { return hp.initial.evaluate(q).real(); };
    EXPECT_EQ(fd_check_initial(v, v0, GridSpec::heat_default()).max_abs, 0.0);

    Field shifted = [](const RealPoint& q) { return q[0] + 0.25; };
    EXPECT_NEAR(fd_check_initial(u, shifted, GridSpec::evolution_default()).max_abs, 0.25, 1e-15);
}
