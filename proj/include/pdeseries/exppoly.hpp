#pragma once

// Exponential-polynomial functions: finite sums of
//   coeff * x^a y^b z^c t^d * exp(lx*x + ly*y + lz*z + lt*t)
// with complex coefficients. Closed under +, *, and differentiation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pdeseries/errors.hpp"

namespace pdeseries {

using Complex = std::complex<double>;

enum class Var : std::uint8_t { x = 0, y = 1, z = 2, t = 3 };

inline constexpr std::size_t kVarCount = 4;
inline constexpr std::array<Var, 4> kAllVars{Var::x, Var::y, Var::z, Var::t};
inline constexpr std::array<Var, 3> kSpatialVars{Var::x, Var::y, Var::z};

/// Atoms whose |coeff| falls below this after normalization are dropped.
inline constexpr double kMergeTolerance = 1e-14;
/// Relative tolerance under which two exponent coefficients are the same class.
inline constexpr double kExponentTolerance = 1e-12;
inline constexpr std::size_t kDefaultAtomCap = 10000;

constexpr std::size_t index_of(Var v) { return static_cast<std::size_t>(v); }
constexpr char var_name(Var v) { return "xyzt"[index_of(v)]; }

template <class Real>
using Point4 = std::array<Real, 4>;
using Point = Point4<double>;

namespace detail {

inline bool close_real(double a, double b) {
    return std::abs(a - b) <= kExponentTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool close_complex(Complex a, Complex b) {
    return close_real(a.real(), b.real()) && close_real(a.imag(), b.imag());
}

inline Complex ipow(Complex base, unsigned n) {
    Complex r{1.0, 0.0};
    for (unsigned k = 0; k < n; ++k) r *= base;
    return r;
}

template <class Real>
Real ipow(Real base, unsigned n) {
    Real r{1};
    for (unsigned k = 0; k < n; ++k) r *= base;
    return r;
}

inline double snap(double v) { return std::abs(v) < kMergeTolerance ? 0.0 : v; }

}  // namespace detail

class LinearForm {
public:
    LinearForm() = default;

    static LinearForm of(Var v, Complex c = 1.0) {
        LinearForm f;
        f.coeff_[index_of(v)] = c;
        return f;
    }

    Complex operator[](Var v) const { return coeff_[index_of(v)]; }
    void set(Var v, Complex c) { coeff_[index_of(v)] = c; }
    const std::array<Complex, 4>& coefficients() const noexcept { return coeff_; }

    bool is_zero() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](Complex c) { return c == 0.0; });
    }
    bool spatially_zero() const {
        return coeff_[0] == 0.0 && coeff_[1] == 0.0 && coeff_[2] == 0.0;
    }

    /// Sum of squares of the spatial coefficients: the Laplacian eigenvalue of exp(form).
    Complex spatial_square() const {
        return coeff_[0] * coeff_[0] + coeff_[1] * coeff_[1] + coeff_[2] * coeff_[2];
    }

    LinearForm real_part() const {
        LinearForm f;
        for (std::size_t k = 0; k < kVarCount; ++k) f.coeff_[k] = coeff_[k].real();
        return f;
    }
    LinearForm imag_part() const {
        LinearForm f;
        for (std::size_t k = 0; k < kVarCount; ++k) f.coeff_[k] = coeff_[k].imag();
        return f;
    }
    bool is_real() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](Complex c) { return c.imag() == 0.0; });
    }

    LinearForm scaled(Complex s) const {
        LinearForm f;
        for (std::size_t k = 0; k < kVarCount; ++k) f.coeff_[k] = coeff_[k] * s;
        return f;
    }

    friend LinearForm operator+(const LinearForm& a, const LinearForm& b) {
        LinearForm f;
        for (std::size_t k = 0; k < kVarCount; ++k) f.coeff_[k] = a.coeff_[k] + b.coeff_[k];
        return f;
    }
    friend LinearForm operator-(const LinearForm& a) { return a.scaled(-1.0); }

    bool approx_equal(const LinearForm& o) const {
        for (std::size_t k = 0; k < kVarCount; ++k)
            if (!detail::close_complex(coeff_[k], o.coeff_[k])) return false;
        return true;
    }

    template <class Real>
    std::complex<Real> apply(const Point4<Real>& p) const {
        std::complex<Real> s{0, 0};
        for (std::size_t k = 0; k < kVarCount; ++k)
            if (coeff_[k] != 0.0) s += std::complex<Real>(coeff_[k]) * p[k];
        return s;
    }

    void snap_small() {
        for (auto& c : coeff_) c = {detail::snap(c.real()), detail::snap(c.imag())};
    }

private:
    std::array<Complex, 4> coeff_{};
};

using Powers = std::array<unsigned, 4>;

struct Atom {
    Complex coeff{};
    Powers powers{};
    LinearForm exponent{};

    unsigned power(Var v) const { return powers[index_of(v)]; }
    unsigned spatial_degree() const { return powers[0] + powers[1] + powers[2]; }

    bool same_class(const Atom& o) const { return powers == o.powers && exponent.approx_equal(o.exponent); }

    template <class Real>
    std::complex<Real> evaluate(const Point4<Real>& p) const {
        Real mono{1};
        for (std::size_t k = 0; k < kVarCount; ++k) mono *= detail::ipow(p[k], powers[k]);
        std::complex<Real> value = std::complex<Real>(coeff) * mono;
        if (!exponent.is_zero()) value *= std::exp(exponent.apply(p));
        return value;
    }
};

class ExpPoly;
ExpPoly multiply(const ExpPoly& a, const ExpPoly& b, std::size_t cap = kDefaultAtomCap);

class ExpPoly {
public:
    ExpPoly() = default;

    static ExpPoly constant(Complex c) { return from_atoms({Atom{c, {}, {}}}); }

    static ExpPoly variable(Var v, unsigned power = 1) {
        Atom a{1.0, {}, {}};
        a.powers[index_of(v)] = power;
        return from_atoms({a});
    }

    static ExpPoly exponential(const LinearForm& exponent, Complex coeff = 1.0) {
        return from_atoms({Atom{coeff, {}, exponent}});
    }

    /// Normalizes: merges atoms of the same class, drops negligible ones, enforces the cap.
    static ExpPoly from_atoms(std::vector<Atom> atoms, std::size_t cap = kDefaultAtomCap) {
        ExpPoly p;
        p.atoms_ = normalize(std::move(atoms));
        if (p.atoms_.size() > cap) throw AtomOverflowError(p.atoms_.size(), cap);
        return p;
    }

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool is_zero() const noexcept { return atoms_.empty(); }

    bool depends_on(Var v) const {
        return std::any_of(atoms_.begin(), atoms_.end(),
                           [v](const Atom& a) { return a.power(v) > 0 || a.exponent[v] != 0.0; });
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& a : atoms_) m = std::max(m, std::abs(a.coeff));
        return m;
    }

    template <class Real>
    std::complex<Real> evaluate(const Point4<Real>& p) const {
        std::complex<Real> s{0, 0};
        for (const auto& a : atoms_) s += a.evaluate(p);
        return s;
    }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
        std::vector<Atom> all = a.atoms_;
        all.insert(all.end(), b.atoms_.begin(), b.atoms_.end());
        return from_atoms(std::move(all));
    }
    friend ExpPoly operator-(const ExpPoly& a) { return a * Complex{-1.0, 0.0}; }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return a + (-b); }
    friend ExpPoly operator*(const ExpPoly& a, Complex s) {
        std::vector<Atom> all = a.atoms_;
        for (auto& at : all) at.coeff *= s;
        return from_atoms(std::move(all));
    }
    friend ExpPoly operator*(Complex s, const ExpPoly& a) { return a * s; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) { return multiply(a, b); }
    ExpPoly& operator+=(const ExpPoly& o) { return *this = *this + o; }

    /// Exact structural equality of the normalized representation.
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) {
        if (a.atoms_.size() != b.atoms_.size()) return false;
        for (std::size_t k = 0; k < a.atoms_.size(); ++k) {
            const auto& p = a.atoms_[k];
            const auto& q = b.atoms_[k];
            if (p.coeff != q.coeff || p.powers != q.powers || p.exponent.coefficients() != q.exponent.coefficients())
                return false;
        }
        return true;
    }

private:
    static bool key_less(const Atom& a, const Atom& b) {
        if (a.powers != b.powers) return a.powers < b.powers;
        const auto& ea = a.exponent.coefficients();
        const auto& eb = b.exponent.coefficients();
        for (std::size_t k = 0; k < kVarCount; ++k) {
            if (ea[k].real() != eb[k].real()) return ea[k].real() < eb[k].real();
            if (ea[k].imag() != eb[k].imag()) return ea[k].imag() < eb[k].imag();
        }
        return false;
    }

    static std::vector<Atom> normalize(std::vector<Atom> atoms) {
        for (auto& a : atoms) {
            if (!std::isfinite(a.coeff.real()) || !std::isfinite(a.coeff.imag()))
                throw Error("non-finite coefficient in exponential polynomial");
            a.exponent.snap_small();
        }
        std::sort(atoms.begin(), atoms.end(), key_less);

        // Sorted by exponent x-real part within equal powers, so every tolerance
        // match of an incoming atom lies in a contiguous window at the tail.
        std::vector<Atom> merged;
        merged.reserve(atoms.size());
        for (const auto& a : atoms) {
            bool absorbed = false;
            for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
                if (it->powers != a.powers) break;
                if (!detail::close_real(it->exponent[Var::x].real(), a.exponent[Var::x].real())) break;
                if (it->exponent.approx_equal(a.exponent)) {
                    it->coeff += a.coeff;
                    absorbed = true;
                    break;
                }
            }
            if (!absorbed) merged.push_back(a);
        }

        std::vector<Atom> out;
        out.reserve(merged.size());
        for (auto& a : merged) {
            double mag = std::abs(a.coeff);
            if (mag < kMergeTolerance) continue;
            double floor = kMergeTolerance * std::max(1.0, mag);
            if (std::abs(a.coeff.real()) < floor) a.coeff.real(0.0);
            if (std::abs(a.coeff.imag()) < floor) a.coeff.imag(0.0);
            out.push_back(a);
        }
        return out;
    }

    std::vector<Atom> atoms_;
};

inline ExpPoly add(const ExpPoly& a, const ExpPoly& b) { return a + b; }
inline ExpPoly scale(const ExpPoly& a, Complex s) { return a * s; }

inline ExpPoly multiply(const ExpPoly& a, const ExpPoly& b, std::size_t cap) {
    std::vector<Atom> acc;
    ExpPoly result;
    const std::size_t flush = std::max<std::size_t>(4 * cap, 64);
    for (const auto& p : a.atoms()) {
        for (const auto& q : b.atoms()) {
            Atom r;
            r.coeff = p.coeff * q.coeff;
            for (std::size_t k = 0; k < kVarCount; ++k) r.powers[k] = p.powers[k] + q.powers[k];
            r.exponent = p.exponent + q.exponent;
            acc.push_back(r);
        }
        if (acc.size() >= flush) {
            acc.insert(acc.end(), result.atoms().begin(), result.atoms().end());
            result = ExpPoly::from_atoms(std::move(acc), cap);
            acc.clear();
        }
    }
    acc.insert(acc.end(), result.atoms().begin(), result.atoms().end());
    return ExpPoly::from_atoms(std::move(acc), cap);
}

inline ExpPoly power(const ExpPoly& a, unsigned n, std::size_t cap = kDefaultAtomCap) {
    ExpPoly r = ExpPoly::constant(1.0);
    for (unsigned k = 0; k < n; ++k) r = multiply(r, a, cap);
    return r;
}

inline ExpPoly differentiate(const ExpPoly& a, Var v, unsigned order = 1) {
    const std::size_t k = index_of(v);
    ExpPoly cur = a;
    for (unsigned step = 0; step < order && !cur.is_zero(); ++step) {
        std::vector<Atom> out;
        out.reserve(2 * cur.size());
        for (const auto& at : cur.atoms()) {
            if (at.powers[k] > 0) {
                Atom d = at;
                d.coeff *= static_cast<double>(at.powers[k]);
                d.powers[k] -= 1;
                out.push_back(d);
            }
            Complex lam = at.exponent[v];
            if (lam != 0.0) {
                Atom d = at;
                d.coeff *= lam;
                out.push_back(d);
            }
        }
        cur = ExpPoly::from_atoms(std::move(out));
    }
    return cur;
}

inline ExpPoly laplacian(const ExpPoly& a) {
    return differentiate(a, Var::x, 2) + differentiate(a, Var::y, 2) + differentiate(a, Var::z, 2);
}

inline Complex evaluate(const ExpPoly& a, const Point& p) { return a.evaluate(p); }

/// Largest |coeff| among atoms of a - b.
inline double max_atom_difference(const ExpPoly& a, const ExpPoly& b) { return (a - b).max_abs_coeff(); }

/// Atom-wise agreement: every atom of a - b is below tol * max(1, largest coefficient).
inline bool approx_equal(const ExpPoly& a, const ExpPoly& b, double tol) {
    double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
    return max_atom_difference(a, b) <= tol * scale;
}

/// Multiplies by t^n.
inline ExpPoly times_t_power(const ExpPoly& a, unsigned n) {
    std::vector<Atom> out = a.atoms();
    for (auto& at : out) at.powers[index_of(Var::t)] += n;
    return ExpPoly::from_atoms(std::move(out));
}

}  // namespace pdeseries
