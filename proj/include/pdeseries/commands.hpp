#pragma once

// Command implementations behind the pdeseries executable. Results go to `out`,
// diagnostics to `err`; the return value is the process exit code.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pdeseries/diffusion.hpp"
#include "pdeseries/evolution.hpp"
#include "pdeseries/flow.hpp"
#include "pdeseries/problem_file.hpp"
#include "pdeseries/quadrature.hpp"
#include "pdeseries/verify.hpp"

namespace pdeseries {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct SolveOptions {
    std::size_t order = 12;
    bool verify = false;
    double tolerance = 1e-5;
    std::optional<std::string> sample;  // "x:lo:hi:n,t:lo:hi:n"
    std::optional<std::string> csv;     // output path; stdout when absent
};

struct FlowOptions {
    bool quadrature = false;
    KernelMode mode = KernelMode::Standard;
    bool verify = false;
    double tolerance = 1e-5;
    std::optional<std::string> sample;
    std::optional<std::string> csv;
    std::optional<Point> query;  // pressure query point
};

inline KernelMode parse_kernel_mode(const std::string& s) {
    if (s == "standard") return KernelMode::Standard;
    if (s == "paper_literal") return KernelMode::Literal;
    throw ProblemError("unknown mode '" + s + "', expected standard or paper_literal");
}

/// Parses "x:lo:hi:n,t:lo:hi:n"; axes left out are pinned at 0.
inline GridSpec parse_sample_grid(const std::string& text) {
    GridSpec g;
    g.x = g.y = g.z = g.t = {0.0, 0.0, 1};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = detail::trim(item);
        std::vector<std::string> f;
        std::stringstream is(item);
        std::string part;
        while (std::getline(is, part, ':')) f.push_back(detail::trim(part));
        if (f.size() != 4 || f[0].size() != 1) throw ProblemError("bad sample axis '" + item + "', expected v:lo:hi:n");
        Range r;
        try {
            std::size_t used = 0;
            r.lo = std::stod(f[1], &used);
            if (used != f[1].size()) throw std::invalid_argument(f[1]);
            r.hi = std::stod(f[2], &used);
            if (used != f[2].size()) throw std::invalid_argument(f[2]);
            long n = std::stol(f[3], &used);
            if (used != f[3].size() || n < 1) throw std::invalid_argument(f[3]);
            r.count = static_cast<std::size_t>(n);
        } catch (const std::logic_error&) {
            throw ProblemError("bad number in sample axis '" + item + "'");
        }
        switch (f[0][0]) {
            case 'x': g.x = r; break;
            case 'y': g.y = r; break;
            case 'z': g.z = r; break;
            case 't': g.t = r; break;
            default: throw ProblemError("unknown sample axis '" + f[0] + "'");
        }
    }
    return g;
}

namespace detail {

inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const GridSpec& grid, const std::function<Complex(const Point&)>& f) {
    os << "x,y,z,t,value_re,value_im\n";
    for_each_point(grid, [&](const RealPoint& rp) {
        Point p{static_cast<double>(rp[0]), static_cast<double>(rp[1]), static_cast<double>(rp[2]),
                static_cast<double>(rp[3])};
        Complex v = f(p);
        os << csv_number(p[0]) << ',' << csv_number(p[1]) << ',' << csv_number(p[2]) << ',' << csv_number(p[3])
           << ',' << csv_number(v.real()) << ',' << csv_number(v.imag()) << '\n';
    });
}

/// Writes to `path` (or `out` when no path is given).
inline void emit_csv(const std::optional<std::string>& path, std::ostream& out, const GridSpec& grid,
                     const std::function<Complex(const Point&)>& f) {
    if (!path) {
        write_csv(out, grid, f);
        return;
    }
    std::ofstream file(*path);
    if (!file) throw ProblemError("cannot write '" + *path + "'");
    write_csv(file, grid, f);
}

/// "out.csv" -> "out.u_x.csv"
inline std::string component_path(const std::string& path, const std::string& tag) {
    auto dot = path.rfind('.');
    auto slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "." + tag;
    return path.substr(0, dot) + "." + tag + path.substr(dot);
}

inline void print_table(std::ostream& out, const SeriesSolution& s, const char* name = "w") {
    for (std::size_t n = 0; n < s.coefficients.size(); ++n)
        out << name << "_" << n << " = " << to_display(s.coefficients[n]) << '\n';
}

inline void print_report(std::ostream& out, const std::string& prefix, const ResidualReport& r) {
    const auto& w = r.worst_point;
    out << prefix << ".max_abs = " << csv_number(r.max_abs) << '\n'
        << prefix << ".rms = " << csv_number(r.rms) << '\n'
        << prefix << ".worst_point = (" << format_number(w[0]) << ", " << format_number(w[1]) << ", "
        << format_number(w[2]) << ", " << format_number(w[3]) << ")\n"
        << prefix << ".order_used = " << r.order_used << '\n';
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ProblemError& e) {
        err << "problem error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

inline Field real_field(std::function<std::complex<FdReal>(const RealPoint&)> f) {
    return [f = std::move(f)](const RealPoint& p) { return f(p).real(); };
}

inline int finish_verify(std::ostream& out, std::ostream& err, const ResidualReport& r, double tol) {
    print_report(out, "residual", r);
    if (r.max_abs < tol) {
        out << "status: ok\n";
        return kExitOk;
    }
    out << "status: residual above tolerance\n";
    err << "verification failed: residual " << csv_number(r.max_abs) << " >= " << csv_number(tol) << '\n';
    return kExitFailure;
}

inline int solve_evolution(const EvolutionProblem& problem, const SolveOptions& opt, std::ostream& out,
                           std::ostream& err) {
    SeriesSolution s = solve_series(problem, opt.order);
    print_table(out, s);
    ClosedForm cf = detect_closed_form(s);
    if (cf.kind != ClosedForm::Kind::None)
        out << "closed_form = " << cf.to_string() << '\n'
            << "closed_form.kind = " << kind_name(cf.kind) << '\n'
            << "closed_form.lambda = " << format_complex(cf.ratio) << '\n';
    else
        out << "closed_form = none\n";

    const bool exact = cf.kind != ClosedForm::Kind::None || s.terminates();
    auto value = [&](const RealPoint& p) -> std::complex<FdReal> {
        if (cf.kind != ClosedForm::Kind::None) return cf.evaluate(p);
        return s.evaluate(p, opt.order);
    };
    if (opt.sample) {
        GridSpec g = parse_sample_grid(*opt.sample);
        emit_csv(opt.csv, out, g, [&](const Point& p) {
            auto v = value(RealPoint{p[0], p[1], p[2], p[3]});
            return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        });
    }
    if (!opt.verify) {
        out << "status: ok\n";
        return kExitOk;
    }
    ResidualReport r = fd_residual_evolution(real_field(value), problem, GridSpec::evolution_default(),
                                             exact ? -1 : static_cast<int>(opt.order));
    return finish_verify(out, err, r, opt.tolerance);
}

inline int solve_heat(const HeatProblem& problem, const SolveOptions& opt, std::ostream& out, std::ostream& err) {
    SeriesSolution s = heat_series(problem, opt.order);
    print_table(out, s);
    std::optional<ExpPoly> closed;
    if (s.terminates())
        closed = s.partial_sum(s.max_order());
    else if (is_eigen_combination(problem.initial))
        closed = heat_closed_form(problem);
    out << "closed_form = " << (closed ? to_display(*closed) : std::string("none")) << '\n';
    if (!closed && growth_suspect(s)) err << "warning: coefficient growth suggests the series may diverge\n";

    auto value = [&](const RealPoint& p) -> std::complex<FdReal> {
        return closed ? closed->evaluate(p) : s.evaluate(p, opt.order);
    };
    if (opt.sample) {
        GridSpec g = parse_sample_grid(*opt.sample);
        emit_csv(opt.csv, out, g, [&](const Point& p) { return closed ? closed->evaluate(p) : s.evaluate(p, opt.order); });
    }
    if (!opt.verify) {
        out << "status: ok\n";
        return kExitOk;
    }
    ResidualReport r = fd_residual_heat(real_field(value), problem.diffusivity, GridSpec::heat_default(), {},
                                        closed ? -1 : static_cast<int>(opt.order));
    return finish_verify(out, err, r, opt.tolerance);
}

inline int solve_ball(const BallProblem& problem, const SolveOptions& opt, std::ostream& out, std::ostream& err) {
    BallSolution b = ball_series(problem, opt.order);
    print_table(out, b.v_series, "v");
    if (b.v_closed) out << "closed_form.v = " << to_display(*b.v_closed) << '\n';
    out << "temperature = " << b.temperature_display() << '\n';
    const int order_used = b.v_closed ? -1 : static_cast<int>(opt.order);
    if (auto defect = b.boundary_defect(0.0, opt.order))
        out << "boundary_defect(t=0) = " << csv_number(*defect) << '\n';

    if (opt.sample) {
        GridSpec g = parse_sample_grid(*opt.sample);
        emit_csv(opt.csv, out, g, [&](const Point& p) { return b.temperature_value(p[0], p[3], opt.order); });
    }
    if (!opt.verify) {
        out << "status: ok\n";
        return kExitOk;
    }
    GridSpec g = GridSpec::radial_default();
    Field v = [&](const RealPoint& p) { return b.scaled_value(p[0], p[3], opt.order).real(); };
    Field temp = [&](const RealPoint& p) { return b.temperature_value(p[0], p[3], opt.order).real(); };
    ResidualReport rv = fd_residual_heat_1d(v, b.diffusivity, g, order_used);
    print_report(out, "residual.v", rv);
    ResidualReport rt = fd_residual_radial(temp, b.diffusivity, g, order_used);
    if (rv.max_abs > rt.max_abs) rt = rv;
    return finish_verify(out, err, rt, opt.tolerance);
}

}  // namespace detail

inline int cmd_solve(const std::string& path, const SolveOptions& opt, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    return detail::guarded(err, [&] {
        ProblemFile file = load_problem_file(path);
        out << "kind = " << kind_name(file.kind) << '\n';
        switch (file.kind) {
            case ProblemKind::Evolution:
                return detail::solve_evolution(std::get<EvolutionProblem>(file.problem), opt, out, err);
            case ProblemKind::Heat: return detail::solve_heat(std::get<HeatProblem>(file.problem), opt, out, err);
            case ProblemKind::Ball: return detail::solve_ball(std::get<BallProblem>(file.problem), opt, out, err);
            case ProblemKind::Flow: break;
        }
        err << "flow problems are handled by the flow command\n";
        return static_cast<int>(kExitUsage);
    });
}

inline int cmd_flow(const std::string& path, const FlowOptions& opt, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    return detail::guarded(err, [&] {
        ProblemFile file = load_problem_file(path);
        if (file.kind != ProblemKind::Flow) {
            err << "the flow command needs a [flow] problem file\n";
            return static_cast<int>(kExitUsage);
        }
        const auto& problem = std::get<FlowProblem>(file.problem);
        FlowSolution sol = solve_flow(problem);
        const char* names[] = {"x", "y", "z"};
        for (std::size_t k = 0; k < 3; ++k) out << "psi." << names[k] << " = " << to_display(sol.psi[k]) << '\n';
        for (std::size_t k = 0; k < 3; ++k)
            out << "curl_psi." << names[k] << " = " << to_display(sol.curl_psi[k]) << '\n';
        if (sol.velocity) {
            auto disp = sol.velocity->display();
            for (std::size_t k = 0; k < 3; ++k) out << "velocity." << names[k] << " = " << disp[k] << '\n';
        } else {
            out << "velocity = unavailable (" << sol.velocity_error << ")\n";
        }
        out << "pressure = " << sol.pressure.formula() << '\n';
        if (opt.query) {
            const Point& q = *opt.query;
            const double value = sol.pressure(q);
            out << "pressure(" << detail::format_number(q[0]) << ", " << detail::format_number(q[1]) << ", "
                << detail::format_number(q[2]) << ", " << detail::format_number(q[3])
                << ") = " << detail::csv_number(value) << '\n';
        }

        if (opt.sample) {
            GridSpec g = parse_sample_grid(*opt.sample);
            std::vector<Point> points;
            detail::for_each_point(g, [&](const RealPoint& p) {
                points.push_back({static_cast<double>(p[0]), static_cast<double>(p[1]), static_cast<double>(p[2]),
                                  static_cast<double>(p[3])});
            });
            std::vector<std::array<Complex, 3>> values;
            if (opt.quadrature) {
                QuadratureSettings qs;
                qs.mode = opt.mode;
                values = assemble_velocity_quadrature(sol.psi, problem.potential, points, qs);
            } else if (sol.velocity) {
                for (const auto& p : points) values.push_back(sol.velocity->evaluate(p));
            } else {
                throw ProblemError("symbolic velocity unavailable; use --quadrature for samples");
            }
            for (std::size_t k = 0; k < 3; ++k) {
                std::size_t idx = 0;
                auto f = [&](const Point&) { return values[idx++][k]; };
                std::string tag = std::string("u_") + names[k];
                if (opt.csv) {
                    detail::emit_csv(detail::component_path(*opt.csv, tag), out, g, f);
                } else {
                    out << "# " << tag << '\n';
                    detail::write_csv(out, g, f);
                }
            }
        }

        if (!opt.verify) {
            out << "status: ok\n";
            return static_cast<int>(kExitOk);
        }
        // Each vorticity component must satisfy psi_t = nu Lap psi + curl f.
        ResidualReport worst;
        for (std::size_t k = 0; k < 3; ++k) {
            const ExpPoly& c = sol.psi[k];
            const ExpPoly& src = problem.forcing_curl[k];
            Field u = [&c](const RealPoint& p) { return c.evaluate(p).real(); };
            Field s = [&src](const RealPoint& p) { return src.evaluate(p).real(); };
            GridSpec g = GridSpec::heat_default();
            g.x.count = g.y.count = g.z.count = 9;
            ResidualReport r = fd_residual_heat(u, problem.viscosity, g, s);
            detail::print_report(out, std::string("residual.psi.") + names[k], r);
            if (k == 0 || r.max_abs > worst.max_abs) worst = r;
        }
        return detail::finish_verify(out, err, worst, opt.tolerance);
    });
}

}  // namespace pdeseries
