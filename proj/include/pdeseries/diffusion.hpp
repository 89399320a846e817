#pragma once

// Constant-coefficient heat equation u_t = a^2 Lap u and its radial-ball reduction.
// In the (i t)^k / k! convention the coefficients are w_k = (-i a^2)^k Lap^k u0.

#include <cmath>
#include <optional>
#include <string>

#include "pdeseries/display.hpp"
#include "pdeseries/series.hpp"
#include "pdeseries/spectral.hpp"

namespace pdeseries {

struct HeatProblem {
    double diffusivity = 1.0;  // a^2
    ExpPoly initial;           // u0(x, y, z)

    void validate() const {
        if (!(diffusivity > 0.0) || !std::isfinite(diffusivity)) throw ProblemError("diffusivity a^2 must be positive");
        if (initial.depends_on(Var::t)) throw ProblemError("initial temperature must not depend on t");
    }
};

inline SeriesSolution heat_series(const HeatProblem& problem, std::size_t max_order = 12,
                                  std::size_t cap = kDefaultAtomCap) {
    problem.validate();
    const Complex step = Complex{0.0, -1.0} * problem.diffusivity;
    SeriesSolution sol;
    sol.coefficients.push_back(problem.initial);
    for (std::size_t k = 0; k < max_order; ++k) {
        try {
            ExpPoly next = laplacian(sol.coefficients.back()) * step;
            if (next.size() > cap) throw AtomOverflowError(next.size(), cap);
            sol.coefficients.push_back(std::move(next));
        } catch (const AtomOverflowError& e) {
            throw AtomOverflowError(e.count(), e.cap(), static_cast<int>(k + 1));
        }
    }
    return sol;
}

/// Exact resummation exp(a^2 t Lap) u0, defined when every atom of u0 is an eigen-atom.
inline ExpPoly heat_closed_form(const HeatProblem& problem) {
    problem.validate();
    return heat_semigroup_in_time(problem.initial, problem.diffusivity);
}

/// Heuristic for the uniform-convergence hypothesis: flags coefficient norms whose
/// ratio ||w_{k+1}|| / ((k+1) ||w_k||) keeps increasing, i.e. growth beyond k! C^k.
inline bool growth_suspect(const SeriesSolution& s) {
    std::vector<double> q;
    for (std::size_t k = 0; k + 1 < s.coefficients.size(); ++k) {
        double lo = 0.0;
        double hi = 0.0;
        for (const auto& a : s.coefficients[k].atoms()) lo += std::abs(a.coeff);
        for (const auto& a : s.coefficients[k + 1].atoms()) hi += std::abs(a.coeff);
        if (lo == 0.0 || hi == 0.0) return false;
        q.push_back(hi / (lo * static_cast<double>(k + 1)));
    }
    if (q.size() < 4) return false;
    for (std::size_t k = q.size() - 3; k < q.size(); ++k)
        if (q[k] <= q[k - 1]) return false;
    return q.back() > 1.0;
}

/// Radial heat conduction in a ball, T_t = a^2 (T_rr + 2/r T_r), solved through V = r T
/// which obeys V_t = a^2 V_rr. The radial coordinate r occupies the x slot.
struct BallProblem {
    double diffusivity = 1.0;     // a^2
    ExpPoly scaled_initial;       // V0(r) = r T0(r)
    std::optional<double> radius;       // R, diagnostic only
    std::optional<double> boundary_h;   // h in T_r + h T = 0 at r = R, diagnostic only

    static BallProblem from_temperature(double a2, const ExpPoly& t0) {
        return {a2, multiply(ExpPoly::variable(Var::x), t0), std::nullopt, std::nullopt};
    }
    static BallProblem from_scaled(double a2, const ExpPoly& v0) { return {a2, v0, std::nullopt, std::nullopt}; }

    void validate() const {
        if (!(diffusivity > 0.0) || !std::isfinite(diffusivity)) throw ProblemError("diffusivity a^2 must be positive");
        for (Var v : {Var::y, Var::z, Var::t})
            if (scaled_initial.depends_on(v)) throw ProblemError("ball initial data may depend on r only");
    }
};

namespace detail {

/// a / x when every atom carries at least one power of x.
inline std::optional<ExpPoly> divide_by_x(const ExpPoly& a) {
    std::vector<Atom> out = a.atoms();
    for (auto& at : out) {
        if (at.power(Var::x) == 0) return std::nullopt;
        at.powers[index_of(Var::x)] -= 1;
    }
    return ExpPoly::from_atoms(std::move(out));
}

}  // namespace detail

struct BallSolution {
    double diffusivity = 1.0;
    SeriesSolution v_series;              // coefficients of V = r T
    std::optional<ExpPoly> v_closed;      // exact V(r, t) when available
    std::optional<ExpPoly> temperature;   // exact T(r, t) when V / r is an exponential polynomial
    std::optional<double> radius;
    std::optional<double> boundary_h;

    /// Exact V when known, otherwise the partial sum of the given order.
    template <class Real>
    std::complex<Real> scaled_value(Real r, Real t, std::size_t order) const {
        Point4<Real> p{r, Real{0}, Real{0}, t};
        if (v_closed) return v_closed->evaluate(p);
        return v_series.evaluate(p, order);
    }

    template <class Real>
    std::complex<Real> temperature_value(Real r, Real t, std::size_t order) const {
        if (temperature) return temperature->evaluate(Point4<Real>{r, Real{0}, Real{0}, t});
        if (r == Real{0}) throw SingularityError("T = V / r is undefined at r = 0");
        return scaled_value(r, t, order) / r;
    }

    std::string temperature_display() const {
        if (temperature) return to_display(*temperature);
        std::string v = v_closed ? to_display(*v_closed) : "sum_n (a^2 t)^n / n! * d^(2n)/dr^(2n) V0";
        return "(" + v + ")/x";
    }

    /// |V_r + (h - 1/R) V| at r = R, when R and h were supplied.
    std::optional<double> boundary_defect(double t, std::size_t order) const {
        if (!radius || !boundary_h) return std::nullopt;
        const double R = *radius;
        const double step = 1e-6 * std::max(1.0, R);
        Complex dv = (scaled_value(R + step, t, order) - scaled_value(R - step, t, order)) / (2.0 * step);
        return std::abs(dv + (*boundary_h - 1.0 / R) * scaled_value(R, t, order));
    }
};

inline BallSolution ball_series(const BallProblem& problem, std::size_t max_order = 12,
                                std::size_t cap = kDefaultAtomCap) {
    problem.validate();
    const Complex step = Complex{0.0, -1.0} * problem.diffusivity;
    BallSolution sol;
    sol.diffusivity = problem.diffusivity;
    sol.radius = problem.radius;
    sol.boundary_h = problem.boundary_h;
    sol.v_series.coefficients.push_back(problem.scaled_initial);
    for (std::size_t k = 0; k < max_order; ++k) {
        ExpPoly next = differentiate(sol.v_series.coefficients.back(), Var::x, 2) * step;
        if (next.size() > cap) throw AtomOverflowError(next.size(), cap, static_cast<int>(k + 1));
        sol.v_series.coefficients.push_back(std::move(next));
    }

    if (sol.v_series.terminates()) {
        sol.v_closed = sol.v_series.partial_sum(sol.v_series.max_order());
    } else if (is_eigen_combination(problem.scaled_initial)) {
        sol.v_closed = heat_semigroup_in_time(problem.scaled_initial, problem.diffusivity);
    }
    if (sol.v_closed) sol.temperature = detail::divide_by_x(*sol.v_closed);
    return sol;
}

}  // namespace pdeseries
