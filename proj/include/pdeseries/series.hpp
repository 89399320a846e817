#pragma once

#include <vector>

#include "pdeseries/exppoly.hpp"

namespace pdeseries {

/// Coefficients w_0..w_N of u = sum_n (i t)^n / n! * w_n.
struct SeriesSolution {
    std::vector<ExpPoly> coefficients;

    std::size_t max_order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }

    template <class Real>
    std::complex<Real> evaluate(const Point4<Real>& p, std::size_t order) const {
        check_order(order);
        const std::complex<Real> it{Real{0}, p[index_of(Var::t)]};
        std::complex<Real> factor{1, 0};
        std::complex<Real> sum{0, 0};
        for (std::size_t n = 0; n <= order; ++n) {
            if (n > 0) factor *= it / static_cast<Real>(n);
            sum += factor * coefficients[n].evaluate(p);
        }
        return sum;
    }

    /// The truncated series as an exponential polynomial (t appears polynomially).
    ExpPoly partial_sum(std::size_t order) const {
        check_order(order);
        ExpPoly sum;
        Complex factor{1.0, 0.0};
        for (std::size_t n = 0; n <= order; ++n) {
            if (n > 0) factor *= Complex{0.0, 1.0} / static_cast<double>(n);
            sum = sum + times_t_power(coefficients[n], static_cast<unsigned>(n)) * factor;
        }
        return sum;
    }

    /// True when every coefficient beyond some index vanishes, so a partial sum is exact.
    bool terminates() const { return !coefficients.empty() && coefficients.back().is_zero(); }

private:
    void check_order(std::size_t order) const {
        if (coefficients.empty() || order > max_order())
            throw ProblemError("requested order " + std::to_string(order) + " exceeds computed order " +
                               std::to_string(max_order()));
    }
};

struct PartialSum {
    double value;     // real part
    double imag_abs;  // |imaginary part|, ~0 for real data
};

inline PartialSum evaluate_partial_sum(const SeriesSolution& s, double x, double t, std::size_t order) {
    Complex v = s.evaluate(Point{x, 0.0, 0.0, t}, order);
    return {v.real(), std::abs(v.imag())};
}

}  // namespace pdeseries
