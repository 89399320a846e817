#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace pdeseries;
using testing_support::random_exppoly;
using testing_support::random_point;

namespace {

const Complex I{0.0, 1.0};

ExpPoly X() { return ExpPoly::variable(Var::x); }

void expect_close(Complex a, Complex b, double tol) {
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(ExpPoly, ZeroAndConstants) {
    ExpPoly zero;
    EXPECT_TRUE(zero.is_zero());
    EXPECT_TRUE(ExpPoly::constant(0.0).is_zero());
    EXPECT_EQ(ExpPoly::constant(3.0).size(), 1u);
    EXPECT_TRUE((X() - X()).is_zero());
}

TEST(ExpPoly, MergesSameClassAndDropsTinyCoefficients) {
    std::vector<Atom> atoms{{1.0, {1, 0, 0, 0}, {}}, {2.0, {1, 0, 0, 0}, {}}, {1e-16, {0, 2, 0, 0}, {}}};
    ExpPoly p = ExpPoly::from_atoms(atoms);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.atoms()[0].coeff, Complex(3.0));
}

TEST(ExpPoly, MergesExponentsWithinTolerance) {
    LinearForm a = LinearForm::of(Var::x, 1.0);
    LinearForm b = LinearForm::of(Var::x, 1.0 + 1e-14);
    ExpPoly p = ExpPoly::exponential(a) + ExpPoly::exponential(b);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(p.atoms()[0].coeff.real(), 2.0, 1e-15);
}

TEST(ExpPoly, AtomCapOverflowThrows) {
    std::vector<Atom> atoms;
    for (unsigned k = 0; k < 20; ++k) atoms.push_back({1.0, {k, 0, 0, 0}, {}});
    EXPECT_THROW(ExpPoly::from_atoms(atoms, 10), AtomOverflowError);
    ExpPoly big = ExpPoly::from_atoms(atoms);
    EXPECT_THROW(multiply(big, big, 30), AtomOverflowError);
}

TEST(ExpPoly, MultiplyExamples) {
    EXPECT_EQ(multiply(X(), X()), ExpPoly::variable(Var::x, 2));
    EXPECT_EQ(multiply(X(), X() * I), ExpPoly::variable(Var::x, 2) * I);

    ExpPoly s = parse("sin(x)");
    ExpPoly expected = ExpPoly::constant(0.5) - parse("cos(2*x)") * 0.5;
    EXPECT_TRUE(approx_equal(multiply(s, s), expected, 1e-15));
}

TEST(ExpPoly, DifferentiateExamples) {
    EXPECT_EQ(differentiate(ExpPoly::variable(Var::x, 2), Var::x), X() * 2.0);
    EXPECT_TRUE(approx_equal(differentiate(parse("sin(x)"), Var::x), parse("cos(x)"), 1e-15));
    EXPECT_TRUE(approx_equal(differentiate(parse("exp(-x)"), Var::x, 2), parse("exp(-x)"), 1e-15));
    EXPECT_EQ(differentiate(X(), Var::x, 0), X());
    EXPECT_TRUE(differentiate(X(), Var::y).is_zero());
    EXPECT_TRUE(differentiate(ExpPoly::variable(Var::x, 3), Var::x, 4).is_zero());
}

TEST(ExpPoly, EvaluateExamples) {
    ExpPoly xt = multiply(X(), ExpPoly::variable(Var::t));
    expect_close(evaluate(xt, {2.0, 0.0, 0.0, 3.0}), 6.0, 0.0);
    expect_close(evaluate(parse("exp(-x)"), {0.0, 5.0, 7.0, 1.0}), 1.0, 0.0);
    expect_close(evaluate(parse("sin(x)"), {std::numbers::pi / 2, 0.0, 0.0, 0.0}), 1.0, 1e-12);
}

TEST(ExpPoly, EvaluateInLongDouble) {
    ExpPoly p = parse("exp(-x)*sin(y) + x^2*t");
    Point4<long double> q{0.3L, 0.7L, 0.0L, 0.2L};
    long double expected = std::exp(-0.3L) * std::sin(0.7L) + 0.09L * 0.2L;
    EXPECT_NEAR(static_cast<double>(p.evaluate(q).real() - expected), 0.0, 1e-17);
}

TEST(ExpPoly, TimesTPower) {
    ExpPoly p = times_t_power(X(), 2);
    expect_close(evaluate(p, {2.0, 0.0, 0.0, 3.0}), 18.0, 0.0);
}

TEST(VectorCalculus, LaplacianOfVorticityTerm) {
    ExpPoly f = parse("cos(y)*cos(z)");
    EXPECT_TRUE(approx_equal(laplacian(f), f * -2.0, 1e-14));
}

TEST(VectorCalculus, CurlOfGradientAndDivergence) {
    ExpPoly xyz = parse("x*y*z");
    VectorField g = gradient(xyz);
    EXPECT_TRUE(curl(g).is_zero());
    VectorField v{parse("x"), parse("-y"), ExpPoly{}};
    EXPECT_TRUE(divergence(v).is_zero());
    EXPECT_EQ(g.cx, parse("y*z"));
}

TEST(VectorCalculus, OperatorsIgnoreTime) {
    ExpPoly f = parse("t^2*exp(t)");
    EXPECT_TRUE(laplacian(f).is_zero());
    EXPECT_TRUE(gradient(f).is_zero());
}

TEST(Spectral, EigenAtomDetection) {
    auto single = [](const char* text) { return parse(text).atoms().front(); };
    EXPECT_TRUE(laplacian_eigenvalue(single("x^2")) == std::nullopt);
    EXPECT_TRUE(laplacian_eigenvalue(single("x*exp(x)")) == std::nullopt);
    auto zs = laplacian_eigenvalue(single("z*exp(i*x)"));
    ASSERT_TRUE(zs.has_value());
    expect_close(*zs, -1.0, 1e-15);
    auto e3 = laplacian_eigenvalue(single("exp(x+y+z)"));
    ASSERT_TRUE(e3.has_value());
    expect_close(*e3, 3.0, 1e-15);
    expect_close(*laplacian_eigenvalue(single("x*y*z")), 0.0, 0.0);
    EXPECT_TRUE(is_eigen_combination(parse("z*sin(x) + cos(y)*cos(z)")));
    EXPECT_FALSE(is_eigen_combination(parse("x^2 + 1")));
}

TEST(Spectral, HeatSemigroupExamples) {
    const double nu = 0.1;
    ExpPoly a = heat_semigroup_in_time(parse("cos(y)*cos(z)"), nu);
    EXPECT_TRUE(approx_equal(a, parse("exp(-0.2*t)*cos(y)*cos(z)"), 1e-14));
    ExpPoly b = heat_semigroup_in_time(parse("exp(x+y+z)"), nu);
    EXPECT_TRUE(approx_equal(b, parse("exp(0.3*t + x + y + z)"), 1e-14));
    EXPECT_EQ(heat_semigroup(ExpPoly::constant(4.0), 2.5, nu), ExpPoly::constant(4.0));
    ExpPoly c = heat_semigroup(parse("sin(x)"), 2.0, 0.5);
    EXPECT_TRUE(approx_equal(c, parse("sin(x)") * std::exp(-1.0), 1e-15));
    EXPECT_THROW(heat_semigroup(parse("x^2"), 1.0, 1.0), NonEigenAtomError);
    EXPECT_THROW(heat_semigroup_in_time(parse("t*sin(x)"), 1.0), ProblemError);
}

// Properties over random inputs.

TEST(FuncalgProperties, NormalizationIsIdempotent) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        ExpPoly a = random_exppoly(rng, 4) + random_exppoly(rng, 4);
        EXPECT_EQ(ExpPoly::from_atoms(a.atoms()), a);
    }
}

TEST(FuncalgProperties, RingLawsByEvaluation) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        ExpPoly a = random_exppoly(rng), b = random_exppoly(rng), c = random_exppoly(rng);
        ExpPoly checks[][2] = {
            {a + b, b + a},
            {(a + b) + c, a + (b + c)},
            {multiply(a, b), multiply(b, a)},
            {multiply(multiply(a, b), c), multiply(a, multiply(b, c))},
            {multiply(a, b + c), multiply(a, b) + multiply(a, c)},
        };
        for (int k = 0; k < 10; ++k) {
            Point p = random_point(rng);
            for (const auto& pair : checks) {
                Complex l = evaluate(pair[0], p), r = evaluate(pair[1], p);
                EXPECT_LE(std::abs(l - r), 1e-10 * std::max(1.0, std::abs(l)));
            }
        }
    }
}

TEST(FuncalgProperties, DerivativeMatchesCentralDifference) {
    std::mt19937_64 rng(13);
    const double h = 1e-5;
    for (int trial = 0; trial < 100; ++trial) {
        ExpPoly a = random_exppoly(rng);
        Point p = random_point(rng);
        for (Var v : kAllVars) {
            Point lo = p, hi = p;
            lo[index_of(v)] -= h;
            hi[index_of(v)] += h;
            Complex fd = (evaluate(a, hi) - evaluate(a, lo)) / (2 * h);
            Complex exact = evaluate(differentiate(a, v), p);
            EXPECT_LE(std::abs(fd - exact), 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST(FuncalgProperties, RealExpressionsEvaluateReal) {
    const char* inputs[] = {"sin(x)*cos(2*y - z) + sinh(t)", "cosh(x+y)*exp(-z)*t^2", "sin(x)^3 - cos(x - 2*t)^2",
                            "exp(x)*sin(y) - 0.5*x*y*z"};
    std::mt19937_64 rng(14);
    for (const char* text : inputs) {
        ExpPoly p = parse(text);
        for (int k = 0; k < 20; ++k) EXPECT_LT(std::abs(evaluate(p, random_point(rng, 2.0)).imag()), 1e-10) << text;
    }
}

TEST(FuncalgProperties, CurlGradZeroAndDivCurlZero) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        ExpPoly f = random_exppoly(rng);
        EXPECT_TRUE(approx_equal(VectorField{}, curl(gradient(f)), 1e-12));
        VectorField v{random_exppoly(rng), random_exppoly(rng), random_exppoly(rng)};
        EXPECT_TRUE(approx_equal(divergence(curl(v)), ExpPoly{}, 1e-12));
    }
}
