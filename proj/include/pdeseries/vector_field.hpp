#pragma once

#include <array>

#include "pdeseries/exppoly.hpp"

namespace pdeseries {

struct VectorField {
    ExpPoly cx, cy, cz;

    const ExpPoly& operator[](std::size_t k) const { return k == 0 ? cx : (k == 1 ? cy : cz); }
    ExpPoly& operator[](std::size_t k) { return k == 0 ? cx : (k == 1 ? cy : cz); }

    bool is_zero() const { return cx.is_zero() && cy.is_zero() && cz.is_zero(); }

    template <class F>
    VectorField map(F&& f) const {
        return {f(cx), f(cy), f(cz)};
    }

    template <class Real>
    std::array<std::complex<Real>, 3> evaluate(const Point4<Real>& p) const {
        return {cx.evaluate(p), cy.evaluate(p), cz.evaluate(p)};
    }

    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        return {a.cx + b.cx, a.cy + b.cy, a.cz + b.cz};
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) {
        return {a.cx - b.cx, a.cy - b.cy, a.cz - b.cz};
    }
    friend VectorField operator-(const VectorField& a) { return {-a.cx, -a.cy, -a.cz}; }
};

inline VectorField gradient(const ExpPoly& f) {
    return {differentiate(f, Var::x), differentiate(f, Var::y), differentiate(f, Var::z)};
}

inline VectorField curl(const VectorField& v) {
    return {differentiate(v.cz, Var::y) - differentiate(v.cy, Var::z),
            differentiate(v.cx, Var::z) - differentiate(v.cz, Var::x),
            differentiate(v.cy, Var::x) - differentiate(v.cx, Var::y)};
}

inline ExpPoly divergence(const VectorField& v) {
    return differentiate(v.cx, Var::x) + differentiate(v.cy, Var::y) + differentiate(v.cz, Var::z);
}

inline VectorField laplacian(const VectorField& v) {
    return v.map([](const ExpPoly& c) { return laplacian(c); });
}

inline bool approx_equal(const VectorField& a, const VectorField& b, double tol) {
    return approx_equal(a.cx, b.cx, tol) && approx_equal(a.cy, b.cy, tol) && approx_equal(a.cz, b.cz, tol);
}

}  // namespace pdeseries
