#include <gtest/gtest.h>

#include <numbers>

#include "pdeseries/diffusion.hpp"
#include "pdeseries/evolution.hpp"
#include "pdeseries/flow.hpp"
#include "test_support.hpp"

using namespace pdeseries;

namespace {

const Complex I{0.0, 1.0};

void expect_roundtrip(const ExpPoly& p) {
    std::string shown = to_display(p);
    ExpPoly back = parse(shown);
    EXPECT_EQ(back.size(), p.size()) << shown;
    EXPECT_TRUE(approx_equal(back, p, 1e-12)) << shown;
}

}  // namespace

TEST(Parse, Variable) {
    ExpPoly p = parse("x");
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.atoms()[0].coeff, Complex(1.0));
    EXPECT_EQ(p.atoms()[0].power(Var::x), 1u);
    EXPECT_TRUE(p.atoms()[0].exponent.is_zero());
}

TEST(Parse, SineBecomesEulerPair) {
    ExpPoly p = parse("sin(x)");
    ASSERT_EQ(p.size(), 2u);
    for (const auto& a : p.atoms()) {
        Complex lam = a.exponent[Var::x];
        EXPECT_EQ(a.spatial_degree(), 0u);
        if (lam.imag() > 0) {
            EXPECT_NEAR(std::abs(lam - I), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(a.coeff - 1.0 / (2.0 * I)), 0.0, 1e-15);
        } else {
            EXPECT_NEAR(std::abs(lam + I), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(a.coeff + 1.0 / (2.0 * I)), 0.0, 1e-15);
        }
    }
}

TEST(Parse, ExponentialTimesT) {
    ExpPoly p = parse("exp(-x)*t");
    ASSERT_EQ(p.size(), 1u);
    const Atom& a = p.atoms()[0];
    EXPECT_EQ(a.coeff, Complex(1.0));
    EXPECT_EQ(a.power(Var::t), 1u);
    EXPECT_EQ(a.exponent[Var::x], Complex(-1.0));
}

TEST(Parse, ArithmeticAndLiterals) {
    EXPECT_EQ(parse("2*x^2 + 0*y"), ExpPoly::variable(Var::x, 2) * 2.0);
    EXPECT_EQ(parse("(x + 1)^2"), parse("x^2 + 2*x + 1"));
    EXPECT_EQ(parse("x^0"), ExpPoly::constant(1.0));
    EXPECT_EQ(parse("1.5e-3*x"), ExpPoly::variable(Var::x) * 1.5e-3);
    EXPECT_EQ(parse("-(-x)"), ExpPoly::variable(Var::x));
    EXPECT_EQ(parse("x/4"), ExpPoly::variable(Var::x) * 0.25);
    EXPECT_EQ(parse("2*i*x"), ExpPoly::variable(Var::x) * (2.0 * I));
    EXPECT_NEAR(parse("pi").atoms()[0].coeff.real(), std::numbers::pi, 0.0);
}

TEST(Parse, HyperbolicAndOffsets) {
    Point p{0.4, -0.3, 0.2, 0.1};
    EXPECT_NEAR(parse("sinh(x - 2*y)").evaluate(p).real(), std::sinh(0.4 + 0.6), 1e-14);
    EXPECT_NEAR(parse("cosh(z + t)").evaluate(p).real(), std::cosh(0.3), 1e-14);
    EXPECT_NEAR(parse("exp(x + 1)").evaluate(p).real(), std::exp(1.4), 1e-13);
    EXPECT_NEAR(parse("sin(x - y - z)").evaluate(p).real(), std::sin(0.5), 1e-14);
    EXPECT_NEAR(parse("cos(2*(x + y))").evaluate(p).real(), std::cos(0.2), 1e-14);
}

TEST(Parse, ErrorsCarryPositions) {
    const char* bad[] = {"sin(x^2)", "exp(x*y)", "x +", "x^-1", "x/y", "x/0", "foo(x)", "(x", "x)", "x^1.5", "3x@", ""};
    for (const char* text : bad) {
        EXPECT_THROW(parse(text), ParseError) << text;
    }
    try {
        parse("x + * y");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Display, Examples) {
    EXPECT_EQ(to_display(parse("sin(x)")), "sin(x)");
    EXPECT_EQ(to_display(parse("2*x^2 + 0*y")), "2*x^2");
    EXPECT_EQ(to_display(ExpPoly::variable(Var::x) * I), "i*x");
    EXPECT_EQ(to_display(ExpPoly{}), "0");
    EXPECT_EQ(to_display(parse("-x")), "-x");
    EXPECT_EQ(to_display(parse("exp(-x)")), "exp(-x)");
    EXPECT_EQ(to_display(parse("cos(x)")), "cos(x)");
}

TEST(Display, RoundTripsParsedInputs) {
    const char* inputs[] = {"sin(x)*cos(2*y - z) + sinh(t)",
                            "cosh(x+y)*exp(-z)*t^2 - 3",
                            "exp(-x - t)",
                            "x*t/7 + 2*i*x^3",
                            "(1 + 2*i)*exp(0.3*i*x + 0.25*y)",
                            "sin(x)^4",
                            "exp(x+y+z)*cos(y)*cos(z) + z*sin(x)"};
    for (const char* text : inputs) expect_roundtrip(parse(text));
}

TEST(Display, RoundTripsRandomValues) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) expect_roundtrip(testing_support::random_exppoly(rng, 4));
}

TEST(Display, RoundTripsSolverResults) {
    EvolutionProblem rlw;
    rlw.b[1] = -0.5;
    rlw.c = 1.0;
    rlw.mixed_order = 2;
    rlw.initial = parse("x");
    for (const auto& w : solve_series(rlw, 6).coefficients) expect_roundtrip(w);

    HeatProblem heat{0.7, parse("sin(x)*cos(2*y) + exp(z)")};
    expect_roundtrip(heat_closed_form(heat));
    for (const auto& w : heat_series(heat, 5).coefficients) expect_roundtrip(w);

    FlowProblem flow;
    flow.viscosity = 0.1;
    flow.initial_vorticity = {parse("cos(y)*cos(z)"), parse("sin(x-y-z)"), parse("exp(x+y+z)")};
    flow.forcing_curl = {parse("t*cos(x)"), parse("exp(t)"), parse("t*z*sin(x)")};
    FlowSolution sol = solve_flow(flow);
    for (std::size_t k = 0; k < 3; ++k) {
        expect_roundtrip(sol.psi[k]);
        expect_roundtrip(sol.curl_psi[k]);
        expect_roundtrip(sol.velocity->rotational[k]);
    }
}
