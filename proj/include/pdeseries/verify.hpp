#pragma once

// Finite-difference residual checks. Candidates are only ever point-evaluated, in
// long double, with second-order central stencils; higher x-derivatives are built by
// composing the 3-point stencils (D^3 = D2 D1, D^4 = D2 D2, ...).

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pdeseries/errors.hpp"
#include "pdeseries/evolution.hpp"

namespace pdeseries {

using FdReal = long double;
using RealPoint = Point4<FdReal>;
using Field = std::function<FdReal(const RealPoint&)>;

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    double at(std::size_t k) const {
        if (count <= 1) return lo;
        return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
};

struct GridSpec {
    Range x{-1.0, 1.0, 21};
    Range y{0.0, 0.0, 1};
    Range z{0.0, 0.0, 1};
    Range t{0.05, 0.25, 11};
    double h_x = 1e-3;
    double h_t = 1e-3;

    static GridSpec evolution_default() { return {}; }

    static GridSpec heat_default() {
        GridSpec g;
        g.y = {-1.0, 1.0, 21};
        g.z = {-1.0, 1.0, 21};
        return g;
    }

    static GridSpec radial_default() {
        GridSpec g;
        g.x = {0.1, 1.0, 21};
        return g;
    }
};

struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    Point worst_point{};
    int order_used = -1;  // series truncation order of the candidate, -1 for exact forms
};

namespace detail {

inline void require_axis(const Range& r, const char* name) {
    if (r.count < 3) throw ProblemError(std::string("grid axis ") + name + " needs at least 3 points");
    if (!(r.hi > r.lo)) throw ProblemError(std::string("grid axis ") + name + " has an empty range");
}

inline void require_steps(const GridSpec& g) {
    if (!(g.h_x > 0.0) || !(g.h_t > 0.0)) throw ProblemError("finite-difference steps must be positive");
    if (g.t.lo - g.h_t < 0.0) throw StencilOutOfRangeError("time stencil reaches below t = 0");
}

/// d^order f / d(var)^order at p by composed central stencils.
inline FdReal fd_derivative(const Field& f, RealPoint p, std::size_t var, unsigned order, FdReal h) {
    if (order == 0) return f(p);
    RealPoint lo = p, hi = p;
    lo[var] -= h;
    hi[var] += h;
    if (order == 1) return (f(hi) - f(lo)) / (2 * h);
    return (fd_derivative(f, hi, var, order - 2, h) - 2 * fd_derivative(f, p, var, order - 2, h) +
            fd_derivative(f, lo, var, order - 2, h)) /
           (h * h);
}

class Accumulator {
public:
    void add(FdReal residual, const RealPoint& p) {
        double r = static_cast<double>(std::fabs(residual));
        sum_sq_ += r * r;
        ++count_;
        if (r > report_.max_abs || count_ == 1) {
            report_.max_abs = r;
            report_.worst_point = {static_cast<double>(p[0]), static_cast<double>(p[1]), static_cast<double>(p[2]),
                                   static_cast<double>(p[3])};
        }
    }
    ResidualReport finish(int order_used) {
        report_.rms = count_ ? std::sqrt(sum_sq_ / static_cast<double>(count_)) : 0.0;
        report_.order_used = order_used;
        return report_;
    }

private:
    ResidualReport report_;
    double sum_sq_ = 0.0;
    std::size_t count_ = 0;
};

template <class F>
void for_each_point(const GridSpec& g, F&& f) {
    for (std::size_t it = 0; it < g.t.count; ++it)
        for (std::size_t ix = 0; ix < g.x.count; ++ix)
            for (std::size_t iy = 0; iy < g.y.count; ++iy)
                for (std::size_t iz = 0; iz < g.z.count; ++iz)
                    f(RealPoint{g.x.at(ix), g.y.at(iy), g.z.at(iz), g.t.at(it)});
}

}  // namespace detail

/// Pointwise residual of u_t - sum a_m D^m u - sum b_m D^m u^{k+1} - c D^i u_t.
inline FdReal evolution_residual_at(const Field& u, const EvolutionProblem& problem, const RealPoint& p, FdReal hx,
                                  FdReal ht) {
    constexpr std::size_t X = 0;
    constexpr std::size_t T = 3;
    const unsigned power = problem.nonlin_exponent + 1;
    Field up = [&u, power](const RealPoint& q) {
        FdReal v = u(q);
        FdReal r = 1;
        for (unsigned j = 0; j < power; ++j) r *= v;
        return r;
    };
    FdReal res = detail::fd_derivative(u, p, T, 1, ht);
    for (const auto& [m, am] : problem.a)
        if (am != 0.0) res -= static_cast<FdReal>(am) * detail::fd_derivative(u, p, X, m, hx);
    for (const auto& [m, bm] : problem.b)
        if (bm != 0.0) res -= static_cast<FdReal>(bm) * detail::fd_derivative(up, p, X, m, hx);
    if (problem.c != 0.0) {
        RealPoint lo = p, hi = p;
        lo[T] -= ht;
        hi[T] += ht;
        FdReal mixed = (detail::fd_derivative(u, hi, X, problem.mixed_order, hx) -
                      detail::fd_derivative(u, lo, X, problem.mixed_order, hx)) /
                     (2 * ht);
        res -= static_cast<FdReal>(problem.c) * mixed;
    }
    return res;
}

inline ResidualReport fd_residual_evolution(const Field& u, const EvolutionProblem& problem,
                                            const GridSpec& grid = GridSpec::evolution_default(),
                                            int order_used = -1) {
    detail::require_axis(grid.x, "x");
    detail::require_axis(grid.t, "t");
    detail::require_steps(grid);
    detail::Accumulator acc;
    GridSpec line = grid;
    line.y = {0.0, 0.0, 1};
    line.z = {0.0, 0.0, 1};
    detail::for_each_point(line, [&](const RealPoint& p) {
        acc.add(evolution_residual_at(u, problem, p, grid.h_x, grid.h_t), p);
    });
    return acc.finish(order_used);
}

/// u_t - a^2 Lap u - source, over the full 3-D grid. `source` may be empty.
inline ResidualReport fd_residual_heat(const Field& u, double diffusivity, const GridSpec& grid = GridSpec::heat_default(),
                                       const Field& source = {}, int order_used = -1) {
    for (const auto* r : {&grid.x, &grid.y, &grid.z, &grid.t}) detail::require_axis(*r, "x/y/z/t");
    detail::require_steps(grid);
    detail::Accumulator acc;
    const FdReal a2 = diffusivity;
    detail::for_each_point(grid, [&](const RealPoint& p) {
        FdReal lap = 0;
        for (std::size_t v = 0; v < 3; ++v) lap += detail::fd_derivative(u, p, v, 2, grid.h_x);
        FdReal res = detail::fd_derivative(u, p, 3, 1, grid.h_t) - a2 * lap;
        if (source) res -= source(p);
        acc.add(res, p);
    });
    return acc.finish(order_used);
}

/// 1-D heat residual u_t - a^2 u_xx over the x-t grid.
inline ResidualReport fd_residual_heat_1d(const Field& u, double diffusivity, const GridSpec& grid,
                                          int order_used = -1) {
    EvolutionProblem p;
    p.a[2] = diffusivity;
    return fd_residual_evolution(u, p, grid, order_used);
}

/// Radial heat conduction T_t - a^2 (T_rr + 2/r T_r), with r on the x axis (r > 0).
inline ResidualReport fd_residual_radial(const Field& temperature, double diffusivity,
                                         const GridSpec& grid = GridSpec::radial_default(), int order_used = -1) {
    detail::require_axis(grid.x, "r");
    detail::require_axis(grid.t, "t");
    detail::require_steps(grid);
    if (grid.x.lo - grid.h_x <= 0.0) throw StencilOutOfRangeError("radial stencil reaches r <= 0");
    detail::Accumulator acc;
    GridSpec line = grid;
    line.y = {0.0, 0.0, 1};
    line.z = {0.0, 0.0, 1};
    const FdReal a2 = diffusivity;
    detail::for_each_point(line, [&](const RealPoint& p) {
        FdReal r = p[0];
        FdReal res = detail::fd_derivative(temperature, p, 3, 1, grid.h_t) -
                   a2 * (detail::fd_derivative(temperature, p, 0, 2, grid.h_x) +
                         2 / r * detail::fd_derivative(temperature, p, 0, 1, grid.h_x));
        acc.add(res, p);
    });
    return acc.finish(order_used);
}

/// max |u(., 0) - datum| over the spatial grid.
inline ResidualReport fd_check_initial(const Field& u, const Field& datum, const GridSpec& grid, int order_used = -1) {
    detail::Accumulator acc;
    GridSpec slice = grid;
    slice.t = {0.0, 0.0, 1};
    detail::for_each_point(slice, [&](const RealPoint& p) { acc.add(u(p) - datum(p), p); });
    return acc.finish(order_used);
}

}  // namespace pdeseries
