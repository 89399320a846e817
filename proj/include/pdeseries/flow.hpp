#pragma once

// Linearized incompressible Navier-Stokes through the vorticity psi = curl u:
//   psi_t - nu Lap psi = curl f,  psi(0) = curl u0,
//   u = -curl Lap^{-1} psi + grad phi,
//   p = p0 + phi_t(ref) - div(Lap^{-1} f)(ref) - phi_t + div(Lap^{-1} f).

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdeseries/display.hpp"
#include "pdeseries/quadrature.hpp"
#include "pdeseries/spectral.hpp"
#include "pdeseries/vector_field.hpp"

namespace pdeseries {

/// phi = amplitude * t / sqrt(x^2 + y^2 + z^2), harmonic away from the origin.
struct InverseRadiusPotential {
    double amplitude = 1.0;
};

using HarmonicPotential = std::variant<std::monostate, ExpPoly, InverseRadiusPotential>;

namespace detail {

inline double spatial_radius(const Point& p, bool require_nonzero) {
    double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (require_nonzero && r == 0.0) throw SingularityError("potential t/|x| is singular at the origin");
    return r;
}

}  // namespace detail

inline std::array<double, 3> potential_gradient(const HarmonicPotential& phi, const Point& p) {
    if (const auto* e = std::get_if<ExpPoly>(&phi)) {
        VectorField g = gradient(*e);
        auto v = g.evaluate(p);
        return {v[0].real(), v[1].real(), v[2].real()};
    }
    if (const auto* ir = std::get_if<InverseRadiusPotential>(&phi)) {
        double r = detail::spatial_radius(p, true);
        double f = -ir->amplitude * p[index_of(Var::t)] / (r * r * r);
        return {f * p[0], f * p[1], f * p[2]};
    }
    return {0.0, 0.0, 0.0};
}

inline double potential_time_derivative(const HarmonicPotential& phi, const Point& p) {
    if (const auto* e = std::get_if<ExpPoly>(&phi)) return differentiate(*e, Var::t).evaluate(p).real();
    if (const auto* ir = std::get_if<InverseRadiusPotential>(&phi))
        return ir->amplitude / detail::spatial_radius(p, true);
    return 0.0;
}

inline std::string potential_display(const HarmonicPotential& phi) {
    if (const auto* e = std::get_if<ExpPoly>(&phi)) return to_display(*e);
    if (const auto* ir = std::get_if<InverseRadiusPotential>(&phi))
        return (ir->amplitude == 1.0 ? std::string() : detail::display_number(ir->amplitude) + "*") +
               "t/sqrt(x^2+y^2+z^2)";
    return "0";
}

struct FlowProblem {
    double viscosity = 1.0;                       // nu
    std::optional<VectorField> initial_velocity;  // u0; when set, its curl replaces initial_vorticity
    VectorField initial_vorticity;                // curl u0
    VectorField forcing_curl;                     // curl f
    std::optional<VectorField> forcing;           // f itself, activates the pressure source term
    HarmonicPotential potential;                  // phi
    Point reference{};                            // (x0, y0, z0, t0)
    double reference_pressure = 0.0;              // p0

    VectorField vorticity0() const { return initial_velocity ? curl(*initial_velocity) : initial_vorticity; }

    void validate() const {
        if (!(viscosity > 0.0) || !std::isfinite(viscosity)) throw ProblemError("viscosity nu must be positive");
        if (initial_velocity) {
            if (!divergence(*initial_velocity).is_zero()) throw ProblemError("initial velocity is not divergence-free");
            for (std::size_t k = 0; k < 3; ++k)
                if ((*initial_velocity)[k].depends_on(Var::t)) throw ProblemError("u0 must not depend on t");
        }
        VectorField w0 = vorticity0();
        for (std::size_t k = 0; k < 3; ++k)
            if (w0[k].depends_on(Var::t)) throw ProblemError("initial vorticity must not depend on t");
        if (const auto* e = std::get_if<ExpPoly>(&potential))
            if (!laplacian(*e).is_zero()) throw ProblemError("potential phi is not harmonic");
    }
};

/// exp(nu t Lap) applied to the initial vorticity, component-wise.
inline VectorField vorticity_homogeneous(const VectorField& initial_vorticity, double viscosity) {
    return initial_vorticity.map([viscosity](const ExpPoly& c) { return heat_semigroup_in_time(c, viscosity); });
}

namespace detail {

/// int_0^t exp(mu (t - s)) s^m exp(rho s) ds as an exponential polynomial in t.
inline std::vector<Atom> duhamel_time_integral(const Atom& spatial, Complex mu, Complex rho, unsigned m) {
    auto term = [&](Complex coeff, unsigned tpow, Complex trate) {
        Atom a = spatial;
        a.coeff *= coeff;
        a.powers[index_of(Var::t)] = tpow;
        a.exponent.set(Var::t, trate);
        return a;
    };
    std::vector<Atom> out;
    const Complex delta = rho - mu;
    if (std::abs(delta) <= 1e-12 * std::max({1.0, std::abs(rho), std::abs(mu)})) {
        out.push_back(term(1.0 / static_cast<double>(m + 1), m + 1, mu));
        return out;
    }
    // e^{mu t} int_0^t s^m e^{delta s} ds
    //   = sum_j (-1)^j m!/(m-j)! t^{m-j} e^{rho t} / delta^{j+1} - (-1)^m m! e^{mu t} / delta^{m+1}
    double fall = 1.0;
    Complex dpow = delta;
    for (unsigned j = 0; j <= m; ++j) {
        if (j > 0) {
            fall *= static_cast<double>(m - j + 1);
            dpow *= delta;
        }
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        out.push_back(term(sign * fall / dpow, m - j, rho));
    }
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    out.push_back(term(-sign * fall / dpow, 0, mu));
    return out;
}

}  // namespace detail

/// Zero-initial-data solution of psi_t - nu Lap psi = curl_f (Duhamel integral), per component.
inline VectorField duhamel_particular(const VectorField& forcing_curl, double viscosity) {
    auto component = [viscosity](const ExpPoly& f) {
        std::vector<Atom> out;
        for (const auto& at : f.atoms()) {
            Complex ev = require_eigenvalue(at);
            Atom spatial = at;
            spatial.powers[index_of(Var::t)] = 0;
            spatial.exponent.set(Var::t, 0.0);
            auto piece = detail::duhamel_time_integral(spatial, viscosity * ev, at.exponent[Var::t], at.power(Var::t));
            for (const auto& p : piece)
                if (!std::isfinite(p.coeff.real()) || !std::isfinite(p.coeff.imag()))
                    throw UnsupportedTimeDependenceError("time integral of forcing atom is not finite");
            out.insert(out.end(), piece.begin(), piece.end());
        }
        return ExpPoly::from_atoms(std::move(out));
    };
    return forcing_curl.map(component);
}

/// Exact inverse Laplacian on eigen-atoms: each atom divided by its eigenvalue.
inline ExpPoly inverse_laplacian_symbolic(const ExpPoly& v) {
    std::vector<Atom> out;
    out.reserve(v.size());
    for (const auto& at : v.atoms()) {
        Complex ev = require_eigenvalue(at);
        if (std::abs(ev) <= 1e-12) throw ZeroEigenvalueError("harmonic atom has no inverse Laplacian in the basis");
        Atom r = at;
        r.coeff /= ev;
        out.push_back(r);
    }
    return ExpPoly::from_atoms(std::move(out));
}

inline VectorField inverse_laplacian_symbolic(const VectorField& v) {
    return v.map([](const ExpPoly& c) { return inverse_laplacian_symbolic(c); });
}

struct VelocityField {
    VectorField rotational;  // -curl Lap^{-1} psi
    HarmonicPotential potential;

    std::array<Complex, 3> evaluate(const Point& p) const {
        auto r = rotational.evaluate(p);
        auto g = potential_gradient(potential, p);
        return {r[0] + g[0], r[1] + g[1], r[2] + g[2]};
    }

    /// The whole velocity as a vector field, when phi is absent or an exponential polynomial.
    std::optional<VectorField> as_vector_field() const {
        if (std::holds_alternative<InverseRadiusPotential>(potential)) return std::nullopt;
        if (const auto* e = std::get_if<ExpPoly>(&potential)) return rotational + gradient(*e);
        return rotational;
    }

    std::array<std::string, 3> display() const {
        std::array<std::string, 3> out;
        const char* names = "xyz";
        for (std::size_t k = 0; k < 3; ++k) {
            std::string rot = to_display(rotational[k]);
            std::string grad;
            if (const auto* e = std::get_if<ExpPoly>(&potential)) {
                grad = to_display(differentiate(*e, kSpatialVars[k]));
            } else if (const auto* ir = std::get_if<InverseRadiusPotential>(&potential)) {
                grad = "-" + (ir->amplitude == 1.0 ? std::string() : detail::display_number(ir->amplitude) + "*") +
                       "t*" + names[k] + "/(x^2+y^2+z^2)^(3/2)";
            }
            if (grad.empty() || grad == "0") {
                out[k] = rot;
            } else if (rot == "0") {
                out[k] = grad;
            } else {
                out[k] = rot;
                detail::append_signed(out[k], grad);
            }
        }
        return out;
    }
};

/// u = -curl(Lap^{-1} psi) + grad phi, computed as -Lap^{-1}(curl psi) + grad phi
/// (the two agree on eigen-atoms, and the latter avoids harmonic atoms of psi).
inline VelocityField assemble_velocity(const VectorField& psi, const HarmonicPotential& potential) {
    return {-inverse_laplacian_symbolic(curl(psi)), potential};
}

/// Numeric velocity at the given points, with Lap^{-1} realized by heat-kernel quadrature.
inline std::vector<std::array<Complex, 3>> assemble_velocity_quadrature(const VectorField& psi,
                                                                       const HarmonicPotential& potential,
                                                                       const std::vector<Point>& points,
                                                                       const QuadratureSettings& settings = {}) {
    VectorField w = curl(psi);
    std::array<std::vector<Complex>, 3> comps;
    for (std::size_t k = 0; k < 3; ++k) comps[k] = inverse_laplacian_quadrature(w[k], points, settings);
    std::vector<std::array<Complex, 3>> out(points.size());
    for (std::size_t n = 0; n < points.size(); ++n) {
        auto g = potential_gradient(potential, points[n]);
        for (std::size_t k = 0; k < 3; ++k) out[n][k] = -comps[k][n] + g[k];
    }
    return out;
}

struct PressureModel {
    double reference_pressure = 0.0;
    Point reference{};
    HarmonicPotential potential;
    std::optional<ExpPoly> source_term;  // div(Lap^{-1} f), absent when f is unknown

    double operator()(const Point& q) const {
        auto source = [this](const Point& p) { return source_term ? source_term->evaluate(p).real() : 0.0; };
        return reference_pressure + potential_time_derivative(potential, reference) - source(reference) -
               potential_time_derivative(potential, q) + source(q);
    }

    std::string formula() const {
        double offset = reference_pressure + potential_time_derivative(potential, reference) -
                        (source_term ? source_term->evaluate(reference).real() : 0.0);
        std::string out = detail::display_number(offset);
        if (const auto* e = std::get_if<ExpPoly>(&potential)) {
            ExpPoly dt = differentiate(*e, Var::t);
            if (!dt.is_zero()) out += " - (" + to_display(dt) + ")";
        } else if (const auto* ir = std::get_if<InverseRadiusPotential>(&potential)) {
            out += " - " + detail::display_number(ir->amplitude) + "/sqrt(x^2+y^2+z^2)";
        }
        if (source_term && !source_term->is_zero()) out += " + (" + to_display(*source_term) + ")";
        return out;
    }
};

inline PressureModel pressure_model(const FlowProblem& problem) {
    PressureModel m{problem.reference_pressure, problem.reference, problem.potential, std::nullopt};
    if (problem.forcing) m.source_term = divergence(inverse_laplacian_symbolic(*problem.forcing));
    return m;
}

inline double pressure(const FlowProblem& problem, const Point& query) { return pressure_model(problem)(query); }

struct FlowSolution {
    VectorField psi;
    VectorField curl_psi;
    std::optional<VelocityField> velocity;  // symbolic path; empty if Lap^{-1} failed
    std::string velocity_error;
    PressureModel pressure;
};

inline FlowSolution solve_flow(const FlowProblem& problem) {
    problem.validate();
    FlowSolution sol;
    sol.psi = vorticity_homogeneous(problem.vorticity0(), problem.viscosity) +
              duhamel_particular(problem.forcing_curl, problem.viscosity);
    sol.curl_psi = curl(sol.psi);
    try {
        sol.velocity = assemble_velocity(sol.psi, problem.potential);
    } catch (const SolverError& e) {
        sol.velocity_error = e.what();
    }
    sol.pressure = pressure_model(problem);
    return sol;
}

}  // namespace pdeseries
