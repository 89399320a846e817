#pragma once

// Heat-kernel quadrature for the inverse Laplacian on a box.
//
// Standard mode:       -int_0^T int_box (4 pi tau)^{-3/2} exp(-|w - s|^2 / (4 tau)) v(s) ds dtau
// Literal mode:        int_0^T int_box (4 pi tau)^{-3/2} exp(-|w - s|^2 / tau)     v(s) ds dtau
//
// Space: tensor-product midpoint rule in v, with the Gaussian integrated exactly over
// each cell (erf differences), so narrow kernels at small tau stay resolved.
// Time: geometric subdivision of (tau_min, T], midpoint in log(tau).

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "pdeseries/exppoly.hpp"

namespace pdeseries {

enum class KernelMode { Standard, Literal };

struct QuadratureSettings {
    double box_lo = -4.0 * std::numbers::pi;
    double box_hi = 4.0 * std::numbers::pi;
    double horizon = 6.0;        // T
    std::size_t cells = 64;      // per axis
    std::size_t tau_nodes = 32;
    double tau_min = 1e-4;
    KernelMode mode = KernelMode::Standard;
};

namespace detail {

/// Mass of the 1-D kernel factor over each cell, centered at `center`.
inline void cell_masses(double center, double tau, const QuadratureSettings& s, std::vector<double>& out,
                        std::size_t& first, std::size_t& last) {
    const double h = (s.box_hi - s.box_lo) / static_cast<double>(s.cells);
    // Standard: (4 pi tau)^{-1/2} exp(-d^2/(4 tau)) integrates to 1/2 [erf(d/(2 sqrt tau))].
    // Literal:  (4 pi tau)^{-1/2} exp(-d^2/tau)     integrates to 1/4 [erf(d/sqrt tau)].
    const bool literal = s.mode == KernelMode::Literal;
    const double width = literal ? std::sqrt(tau) : 2.0 * std::sqrt(tau);
    const double weight = literal ? 0.25 : 0.5;
    out.assign(s.cells, 0.0);
    first = s.cells;
    last = 0;
    double prev = std::erf((s.box_lo - center) / width);
    for (std::size_t j = 0; j < s.cells; ++j) {
        double next = std::erf((s.box_lo + h * static_cast<double>(j + 1) - center) / width);
        double m = weight * (next - prev);
        prev = next;
        if (m > 1e-300) {
            out[j] = m;
            first = std::min(first, j);
            last = j;
        }
    }
}

}  // namespace detail

/// Evaluates the selected kernel integral of `v` at each query point. Each point carries
/// its own time t, which is held fixed inside the integral.
inline std::vector<Complex> inverse_laplacian_quadrature(const std::function<Complex(const Point&)>& v,
                                                         const std::vector<Point>& points,
                                                         const QuadratureSettings& s = {}) {
    const std::size_t n = s.cells;
    const double h = (s.box_hi - s.box_lo) / static_cast<double>(n);
    std::vector<double> centers(n);
    for (std::size_t j = 0; j < n; ++j) centers[j] = s.box_lo + h * (static_cast<double>(j) + 0.5);

    std::vector<double> tau_node(s.tau_nodes), tau_weight(s.tau_nodes);
    const double ratio = std::log(s.horizon / s.tau_min) / static_cast<double>(s.tau_nodes);
    for (std::size_t k = 0; k < s.tau_nodes; ++k) {
        double lo = s.tau_min * std::exp(ratio * static_cast<double>(k));
        double hi = s.tau_min * std::exp(ratio * static_cast<double>(k + 1));
        tau_node[k] = std::sqrt(lo * hi);
        tau_weight[k] = tau_node[k] * ratio;
    }

    std::vector<Complex> values(n * n * n);
    double cached_t = std::numeric_limits<double>::quiet_NaN();
    std::vector<Complex> out;
    out.reserve(points.size());
    std::vector<double> fx, fy, fz;

    for (const auto& w : points) {
        const double t = w[index_of(Var::t)];
        if (!(t == cached_t)) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k)
                        values[(i * n + j) * n + k] = v(Point{centers[i], centers[j], centers[k], t});
            cached_t = t;
        }
        Complex total{0.0, 0.0};
        for (std::size_t q = 0; q < s.tau_nodes; ++q) {
            std::size_t x0, x1, y0, y1, z0, z1;
            detail::cell_masses(w[0], tau_node[q], s, fx, x0, x1);
            detail::cell_masses(w[1], tau_node[q], s, fy, y0, y1);
            detail::cell_masses(w[2], tau_node[q], s, fz, z0, z1);
            if (x0 > x1 || y0 > y1 || z0 > z1) continue;
            Complex acc{0.0, 0.0};
            for (std::size_t i = x0; i <= x1; ++i) {
                Complex row{0.0, 0.0};
                for (std::size_t j = y0; j <= y1; ++j) {
                    const Complex* vals = &values[(i * n + j) * n];
                    Complex col{0.0, 0.0};
                    for (std::size_t k = z0; k <= z1; ++k) col += vals[k] * fz[k];
                    row += col * fy[j];
                }
                acc += row * fx[i];
            }
            total += tau_weight[q] * acc;
        }
        out.push_back(s.mode == KernelMode::Standard ? -total : total);
    }
    return out;
}

inline std::vector<Complex> inverse_laplacian_quadrature(const ExpPoly& v, const std::vector<Point>& points,
                                                         const QuadratureSettings& s = {}) {
    return inverse_laplacian_quadrature([&v](const Point& p) { return v.evaluate(p); }, points, s);
}

}  // namespace pdeseries
