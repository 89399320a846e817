#pragma once

// Series solution of
//   u_t = sum_m a_m d^m u/dx^m + sum_m b_m d^m (u^{k+1})/dx^m + c d^{i+1} u/(dx^i dt),   u(x,0) = h(x)
// with u = sum_n (i t)^n / n! w_n. The coefficients obey
//   i w_{n+1} - i c d^i w_{n+1}/dx^i = sum_m a_m d^m w_n/dx^m + sum_m b_m d^m w_n^{k+1}/dx^m,
// where w_n^p is the t-series coefficient of u^p (binomial convolution).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdeseries/display.hpp"
#include "pdeseries/exppoly.hpp"
#include "pdeseries/series.hpp"

namespace pdeseries {

struct EvolutionProblem {
    std::map<unsigned, double> a;  // linear terms, keyed by derivative order m
    std::map<unsigned, double> b;  // nonlinear terms on u^{k+1}
    double c = 0.0;
    unsigned mixed_order = 1;      // i
    unsigned nonlin_exponent = 1;  // k
    ExpPoly initial;               // h(x)
    ExpPoly forcing;               // only f = 0 is supported

    bool has_nonlinear_term() const {
        for (const auto& [m, v] : b)
            if (v != 0.0) return true;
        return false;
    }

    void validate() const {
        if (mixed_order < 1) throw ProblemError("mixed derivative order i must be positive");
        if (nonlin_exponent < 1) throw ProblemError("nonlinear exponent k must be positive");
        if (!std::isfinite(c)) throw ProblemError("c must be finite");
        for (const auto* coeffs : {&a, &b})
            for (const auto& [m, v] : *coeffs)
                if (!std::isfinite(v)) throw ProblemError("non-finite coefficient for order " + std::to_string(m));
        for (Var v : {Var::y, Var::z, Var::t})
            if (initial.depends_on(v))
                throw ProblemError(std::string("initial datum may depend on x only, found ") + var_name(v));
        if (!forcing.is_zero()) throw ProblemError("nonzero forcing f is not supported by the recursion");
    }
};

namespace detail {

inline double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return static_cast<double>(r);
}

inline double falling(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned j = 0; j < k; ++j) r *= static_cast<double>(n - j);
    return r;
}

}  // namespace detail

/// Solves i*w - i*c*d^i w/dx^i = g inside the exponential-class basis of g.
/// Within each class P(x) e^{lambda x} the operator is triangular in the degree of P
/// with diagonal i(1 - c lambda^i). y, z, t dependence rides along as inert factors.
inline ExpPoly apply_implicit_inverse(const ExpPoly& g, double c, unsigned order,
                                      std::size_t cap = kDefaultAtomCap) {
    struct ClassBlock {
        LinearForm exponent;
        Powers inert;  // powers with x zeroed
        std::vector<Complex> poly;
    };
    std::vector<ClassBlock> blocks;
    for (const auto& at : g.atoms()) {
        Powers inert = at.powers;
        inert[index_of(Var::x)] = 0;
        auto it = std::find_if(blocks.begin(), blocks.end(), [&](const ClassBlock& b) {
            return b.inert == inert && b.exponent.approx_equal(at.exponent);
        });
        if (it == blocks.end()) {
            blocks.push_back({at.exponent, inert, {}});
            it = std::prev(blocks.end());
        }
        unsigned d = at.power(Var::x);
        if (it->poly.size() <= d) it->poly.resize(d + 1);
        it->poly[d] += at.coeff;
    }

    const Complex I{0.0, 1.0};
    std::vector<Atom> out;
    for (const auto& blk : blocks) {
        const Complex lambda = blk.exponent[Var::x];
        const Complex defect = 1.0 - c * detail::ipow(lambda, order);
        if (std::abs(defect) <= 1e-12) throw ResonanceError(lambda);
        const Complex diag = I * defect;
        std::vector<Complex> offdiag(order + 1);
        for (unsigned j = 1; j <= order; ++j)
            offdiag[j] = -I * c * detail::binomial(order, j) * detail::ipow(lambda, order - j);

        const std::size_t top = blk.poly.size();
        std::vector<Complex> sol(top);
        for (std::size_t d = top; d-- > 0;) {
            Complex s = blk.poly[d];
            for (unsigned j = 1; j <= order && d + j < top; ++j)
                s -= offdiag[j] * detail::falling(static_cast<unsigned>(d + j), j) * sol[d + j];
            sol[d] = s / diag;
        }
        for (std::size_t d = 0; d < top; ++d) {
            Atom at{sol[d], blk.inert, blk.exponent};
            at.powers[index_of(Var::x)] = static_cast<unsigned>(d);
            out.push_back(at);
        }
    }
    return ExpPoly::from_atoms(std::move(out), cap);
}

/// Series coefficients of u^p for p = 1..max_power, filled one time index at a time.
class PowersTable {
public:
    explicit PowersTable(unsigned max_power, std::size_t cap = kDefaultAtomCap)
        : rows_(max_power), cap_(cap) {
        if (max_power < 1) throw ProblemError("powers table needs at least p = 1");
    }

    unsigned max_power() const { return static_cast<unsigned>(rows_.size()); }
    std::size_t length() const { return rows_.front().size(); }

    const ExpPoly& at(unsigned p, std::size_t n) const {
        if (p < 1 || p > max_power() || n >= rows_[p - 1].size()) throw std::out_of_range("powers table entry");
        return rows_[p - 1][n];
    }

    /// Appends w_n (row p = 1) and derives w_n^p for p >= 2.
    void append(const ExpPoly& w);

    std::size_t cap() const { return cap_; }

private:
    std::vector<std::vector<ExpPoly>> rows_;
    std::size_t cap_;
};

/// w_n^p = sum_j C(n,j) w_j^1 w_{n-j}^{p-1}, read from the table's lower entries.
inline ExpPoly series_power(const PowersTable& table, unsigned p, std::size_t n) {
    if (p == 1) return table.at(1, n);
    ExpPoly sum;
    for (std::size_t j = 0; j <= n; ++j) {
        const ExpPoly& lhs = table.at(1, j);
        const ExpPoly& rhs = table.at(p - 1, n - j);
        if (lhs.is_zero() || rhs.is_zero()) continue;
        sum = sum + multiply(lhs, rhs, table.cap()) * detail::binomial(n, j);
    }
    return sum;
}

inline void PowersTable::append(const ExpPoly& w) {
    const std::size_t n = rows_.front().size();
    rows_.front().push_back(w);
    for (unsigned p = 2; p <= max_power(); ++p) rows_[p - 1].push_back(series_power(*this, p, n));
}

/// One step of the coefficient recursion: returns w_{n+1} from w_0..w_n.
/// `powers` may be null when the problem has no nonlinear term.
inline ExpPoly recursion_step(const EvolutionProblem& problem, const std::vector<ExpPoly>& coefficients,
                              const PowersTable* powers, std::size_t n, std::size_t cap = kDefaultAtomCap) {
    const ExpPoly& wn = coefficients.at(n);
    ExpPoly rhs;
    for (const auto& [m, am] : problem.a)
        if (am != 0.0) rhs = rhs + differentiate(wn, Var::x, m) * am;
    if (problem.has_nonlinear_term()) {
        if (powers == nullptr) throw ProblemError("nonlinear problem requires a powers table");
        const ExpPoly& wk = powers->at(problem.nonlin_exponent + 1, n);
        for (const auto& [m, bm] : problem.b)
            if (bm != 0.0) rhs = rhs + differentiate(wk, Var::x, m) * bm;
    }
    return apply_implicit_inverse(rhs, problem.c, problem.mixed_order, cap);
}

inline SeriesSolution solve_series(const EvolutionProblem& problem, std::size_t max_order = 12,
                                   std::size_t cap = kDefaultAtomCap) {
    problem.validate();
    SeriesSolution sol;
    sol.coefficients.push_back(problem.initial);

    const bool nonlinear = problem.has_nonlinear_term();
    std::optional<PowersTable> table;
    if (nonlinear) {
        table.emplace(problem.nonlin_exponent + 1, cap);
        table->append(problem.initial);
    }

    for (std::size_t n = 0; n < max_order; ++n) {
        const int step = static_cast<int>(n + 1);
        try {
            ExpPoly next = recursion_step(problem, sol.coefficients, table ? &*table : nullptr, n, cap);
            sol.coefficients.push_back(next);
            if (table) table->append(next);
        } catch (const ResonanceError& e) {
            throw ResonanceError(e.lambda(), step);
        } catch (const AtomOverflowError& e) {
            throw AtomOverflowError(e.count(), e.cap(), step);
        }
    }
    return sol;
}

struct ClosedForm {
    enum class Kind { None, Geometric, Exponential };

    Kind kind = Kind::None;
    Complex ratio{0.0, 0.0};  // lambda
    ExpPoly base;             // w_0

    /// Geometric: base / (1 - i lambda t). Exponential: exp(i lambda t) * base.
    template <class Real>
    std::complex<Real> evaluate(const Point4<Real>& p) const {
        const std::complex<Real> I{0, 1};
        const std::complex<Real> lam(ratio);
        const Real t = p[index_of(Var::t)];
        switch (kind) {
            case Kind::Geometric: return base.evaluate(p) / (Real{1} - I * lam * t);
            case Kind::Exponential: return std::exp(I * lam * t) * base.evaluate(p);
            case Kind::None: break;
        }
        throw ProblemError("no closed form detected");
    }

    /// The Exponential closed form as an exponential polynomial.
    std::optional<ExpPoly> as_exppoly() const {
        if (kind != Kind::Exponential) return std::nullopt;
        return multiply(base, ExpPoly::exponential(LinearForm::of(Var::t, Complex{0.0, 1.0} * ratio)));
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::None: return "none";
            case Kind::Exponential: return to_display(*as_exppoly());
            case Kind::Geometric: {
                // 1 - i*lambda*t written as 1 + mu*t
                Complex mu = -Complex{0.0, 1.0} * ratio;
                if (std::abs(mu.real()) < 1e-15 * std::abs(mu)) mu.real(0.0);
                if (std::abs(mu.imag()) < 1e-15 * std::abs(mu)) mu.imag(0.0);
                std::string slope = detail::display_complex_factor(mu, false) + "t";
                std::string den = slope.front() == '-' ? "1" + slope : "1+" + slope;
                std::string num = to_display(base);
                if (base.size() > 1 || num.find(' ') != std::string::npos) num = "(" + num + ")";
                return num + "/(" + den + ")";
            }
        }
        return "none";
    }
};

inline const char* kind_name(ClosedForm::Kind k) {
    switch (k) {
        case ClosedForm::Kind::Geometric: return "Geometric";
        case ClosedForm::Kind::Exponential: return "Exponential";
        case ClosedForm::Kind::None: break;
    }
    return "None";
}

namespace detail {

inline bool ratio_holds(const std::vector<ExpPoly>& w, Complex lambda, bool factorial_growth) {
    for (std::size_t n = 0; n + 1 < w.size(); ++n) {
        Complex f = factorial_growth ? lambda * static_cast<double>(n + 1) : lambda;
        ExpPoly predicted = w[n] * f;
        double scale = std::max(w[n + 1].max_abs_coeff(), predicted.max_abs_coeff());
        if (max_atom_difference(w[n + 1], predicted) > 1e-10 * scale) return false;
    }
    return true;
}

}  // namespace detail

/// Recognizes w_{n+1} = lambda (n+1) w_n (geometric) or w_{n+1} = lambda w_n (exponential).
inline ClosedForm detect_closed_form(const SeriesSolution& series) {
    const auto& w = series.coefficients;
    ClosedForm none;
    std::size_t nonzero = std::count_if(w.begin(), w.end(), [](const ExpPoly& p) { return !p.is_zero(); });
    if (nonzero < 4 || w[0].is_zero() || w[1].is_zero()) return none;

    // Candidate ratio from the dominant atom of w_0 and its counterpart in w_1.
    const auto& a0 = w[0].atoms();
    const Atom& lead = *std::max_element(a0.begin(), a0.end(), [](const Atom& p, const Atom& q) {
        return std::abs(p.coeff) < std::abs(q.coeff);
    });
    auto match = std::find_if(w[1].atoms().begin(), w[1].atoms().end(),
                              [&](const Atom& q) { return q.same_class(lead); });
    if (match == w[1].atoms().end()) return none;
    const Complex lambda = match->coeff / lead.coeff;

    if (detail::ratio_holds(w, lambda, true)) return {ClosedForm::Kind::Geometric, lambda, w[0]};
    if (detail::ratio_holds(w, lambda, false)) return {ClosedForm::Kind::Exponential, lambda, w[0]};
    return none;
}

}  // namespace pdeseries
