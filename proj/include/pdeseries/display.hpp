#pragma once

// Human-readable rendering of exponential polynomials. Conjugate pairs
// exp(a + i*theta), exp(a - i*theta) are folded back into cos/sin. The output
// is accepted by parse() and reproduces the value to ~1e-15 relative.

#include <cstdio>
#include <string>
#include <vector>

#include "pdeseries/exppoly.hpp"

namespace pdeseries {

namespace detail {

inline std::string display_number(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

inline std::string display_complex_factor(Complex c, bool standalone) {
    const double re = c.real();
    const double im = c.imag();
    if (im == 0.0) {
        if (standalone) return display_number(re);
        if (re == 1.0) return "";
        if (re == -1.0) return "-";
        return display_number(re) + "*";
    }
    if (re == 0.0) {
        std::string s;
        if (im == 1.0)
            s = "i";
        else if (im == -1.0)
            s = "-i";
        else
            s = display_number(im) + "*i";
        return standalone ? s : s + "*";
    }
    std::string ims = display_number(im);
    if (ims.front() != '-') ims = "+" + ims;
    std::string s = "(" + display_number(re) + ims + "*i)";
    return standalone ? s : s + "*";
}

inline void append_signed(std::string& out, const std::string& term) {
    if (out.empty()) {
        out = term;
    } else if (!term.empty() && term.front() == '-') {
        out += " - " + term.substr(1);
    } else {
        out += " + " + term;
    }
}

inline std::string display_linear(const LinearForm& f) {
    std::string out;
    for (Var v : kAllVars) {
        Complex c = f[v];
        if (c == 0.0) continue;
        append_signed(out, display_complex_factor(c, false) + var_name(v));
    }
    return out.empty() ? "0" : out;
}

inline std::string display_monomial(const Powers& p) {
    std::string out;
    for (Var v : kAllVars) {
        unsigned k = p[index_of(v)];
        if (k == 0) continue;
        if (!out.empty()) out += "*";
        out += var_name(v);
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

inline std::string display_term(Complex c, const std::vector<std::string>& factors) {
    std::string body;
    for (const auto& f : factors) {
        if (f.empty()) continue;
        if (!body.empty()) body += "*";
        body += f;
    }
    if (body.empty()) return display_complex_factor(c, true);
    return display_complex_factor(c, false) + body;
}

inline bool positive_orientation(const LinearForm& f) {
    for (Var v : kAllVars) {
        double r = f[v].real();
        if (r != 0.0) return r > 0.0;
    }
    return true;
}

}  // namespace detail

inline std::string to_display(const ExpPoly& a) {
    using namespace detail;
    const auto& atoms = a.atoms();
    std::vector<bool> used(atoms.size(), false);
    std::string out;

    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (used[k]) continue;
        used[k] = true;
        const Atom& p = atoms[k];
        const std::string mono = display_monomial(p.powers);
        const LinearForm re = p.exponent.real_part();
        const LinearForm im = p.exponent.imag_part();
        const std::string growth = re.is_zero() ? "" : "exp(" + display_linear(re) + ")";

        if (im.is_zero()) {
            append_signed(out, display_term(p.coeff, {mono, growth}));
            continue;
        }

        std::size_t partner = atoms.size();
        for (std::size_t j = k + 1; j < atoms.size(); ++j) {
            const Atom& q = atoms[j];
            if (used[j] || q.powers != p.powers) continue;
            if (q.exponent.real_part().approx_equal(re) && q.exponent.imag_part().approx_equal(-im)) {
                partner = j;
                break;
            }
        }
        if (partner == atoms.size()) {
            append_signed(out, display_term(p.coeff, {mono, "exp(" + display_linear(p.exponent) + ")"}));
            continue;
        }
        used[partner] = true;

        bool forward = positive_orientation(im);
        Complex c1 = forward ? p.coeff : atoms[partner].coeff;
        Complex c2 = forward ? atoms[partner].coeff : p.coeff;
        LinearForm theta = forward ? im : -im;
        const Complex I{0.0, 1.0};
        Complex cos_coeff = c1 + c2;
        Complex sin_coeff = I * (c1 - c2);
        double floor = kMergeTolerance * std::max(std::abs(c1), std::abs(c2));
        auto clean = [floor](Complex c) {
            return Complex{std::abs(c.real()) <= floor ? 0.0 : c.real(), std::abs(c.imag()) <= floor ? 0.0 : c.imag()};
        };
        cos_coeff = clean(cos_coeff);
        sin_coeff = clean(sin_coeff);
        const std::string arg = display_linear(theta);
        if (cos_coeff != 0.0) append_signed(out, display_term(cos_coeff, {mono, growth, "cos(" + arg + ")"}));
        if (sin_coeff != 0.0) append_signed(out, display_term(sin_coeff, {mono, growth, "sin(" + arg + ")"}));
    }
    return out.empty() ? "0" : out;
}

}  // namespace pdeseries
