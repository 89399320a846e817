#pragma once

// Recursive-descent front end for exponential-polynomial expressions.
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*        division only by constants
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := number | 'i' | 'pi' | x | y | z | t
//            | func '(' sum ')' | '(' sum ')'
//   func    := exp | sin | cos | sinh | cosh     argument must be affine

#include <cctype>
#include <charconv>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "pdeseries/exppoly.hpp"

namespace pdeseries {

namespace detail {

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, std::size_t cap) : text_(text), cap_(cap) {}

    ExpPoly parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty expression", pos_);
        ExpPoly r = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return r;
    }

private:
    [[noreturn]] static void fail(const std::string& msg, std::size_t pos) { throw ParseError(msg, pos); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExpPoly parse_sum() {
        ExpPoly acc = parse_product();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + parse_product();
            } else if (c == '-') {
                ++pos_;
                acc = acc - parse_product();
            } else {
                return acc;
            }
        }
    }

    ExpPoly parse_product() {
        ExpPoly acc = parse_unary();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = multiply(acc, parse_unary(), cap_);
            } else if (c == '/') {
                std::size_t at = ++pos_;
                ExpPoly d = parse_unary();
                auto k = as_constant(d);
                if (!k) fail("division only by a nonzero constant is supported", at);
                acc = acc * (1.0 / *k);
            } else {
                return acc;
            }
        }
    }

    ExpPoly parse_unary() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -parse_unary();
        }
        if (c == '+') {
            ++pos_;
            return parse_unary();
        }
        return parse_power();
    }

    ExpPoly parse_power() {
        ExpPoly base = parse_primary();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("exponent must be a nonnegative integer", start);
        unsigned n = 0;
        std::from_chars(text_.data() + start, text_.data() + pos_, n);
        return power(base, n, cap_);
    }

    ExpPoly parse_primary() {
        char c = peek();
        std::size_t start = pos_;
        if (c == '(') {
            ++pos_;
            ExpPoly inner = parse_sum();
            if (peek() != ')') fail("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ExpPoly::constant(parse_number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (name == "x") return ExpPoly::variable(Var::x);
            if (name == "y") return ExpPoly::variable(Var::y);
            if (name == "z") return ExpPoly::variable(Var::z);
            if (name == "t") return ExpPoly::variable(Var::t);
            if (name == "i") return ExpPoly::constant(Complex{0.0, 1.0});
            if (name == "pi") return ExpPoly::constant(std::numbers::pi);
            if (name == "exp" || name == "sin" || name == "cos" || name == "sinh" || name == "cosh") {
                if (peek() != '(') fail("expected '(' after " + std::string(name), pos_);
                ++pos_;
                ExpPoly arg = parse_sum();
                if (peek() != ')') fail("expected ')'", pos_);
                ++pos_;
                return apply_function(name, arg, start);
            }
            fail("unknown identifier '" + std::string(name) + "'", start);
        }
        if (c == '\0') fail("unexpected end of input", pos_);
        fail(std::string("unexpected '") + c + "'", pos_);
    }

    double parse_number() {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits();
            else
                pos_ = save;
        }
        double v = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) fail("malformed number", start);
        return v;
    }

    static std::optional<Complex> as_constant(const ExpPoly& p) {
        if (p.is_zero()) return std::nullopt;
        if (p.size() != 1) return std::nullopt;
        const Atom& a = p.atoms().front();
        if (a.powers != Powers{} || !a.exponent.is_zero()) return std::nullopt;
        return a.coeff;
    }

    ExpPoly apply_function(std::string_view name, const ExpPoly& arg, std::size_t at) const {
        LinearForm form;
        Complex offset{0.0, 0.0};
        for (const auto& a : arg.atoms()) {
            unsigned deg = a.powers[0] + a.powers[1] + a.powers[2] + a.powers[3];
            if (!a.exponent.is_zero() || deg > 1) fail("non-linear argument to " + std::string(name), at);
            if (deg == 0) {
                offset += a.coeff;
                continue;
            }
            for (Var v : kAllVars)
                if (a.power(v) == 1) form.set(v, form[v] + a.coeff);
        }
        auto e = [&](Complex s) { return ExpPoly::exponential(form.scaled(s), std::exp(s * offset)); };
        const Complex I{0.0, 1.0};
        if (name == "exp") return e(1.0);
        if (name == "sin") return (e(I) - e(-I)) * (1.0 / (2.0 * I));
        if (name == "cos") return (e(I) + e(-I)) * 0.5;
        if (name == "sinh") return (e(1.0) - e(-1.0)) * 0.5;
        return (e(1.0) + e(-1.0)) * 0.5;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t cap_;
};

}  // namespace detail

/// Parses an expression in x, y, z, t into its canonical exponential-polynomial form.
inline ExpPoly parse(std::string_view text, std::size_t cap = kDefaultAtomCap) {
    return detail::ExpressionParser(text, cap).parse();
}

}  // namespace pdeseries
