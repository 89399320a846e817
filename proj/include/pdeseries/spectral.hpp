#pragma once

// Laplacian eigen-atoms and the exact heat semigroup on them.

#include <optional>

#include "pdeseries/exppoly.hpp"

namespace pdeseries {

/// Returns the eigenvalue when laplacian(atom) is a scalar multiple of atom.
inline std::optional<Complex> laplacian_eigenvalue(const Atom& atom) {
    Atom unit = atom;
    unit.coeff = 1.0;
    ExpPoly lap = laplacian(ExpPoly::from_atoms({unit}));
    if (lap.is_zero()) return Complex{0.0, 0.0};
    if (lap.size() != 1) return std::nullopt;
    const Atom& a = lap.atoms().front();
    if (!a.same_class(unit)) return std::nullopt;
    return a.coeff;
}

inline Complex require_eigenvalue(const Atom& atom) {
    auto ev = laplacian_eigenvalue(atom);
    if (!ev) throw NonEigenAtomError("atom is not a Laplacian eigenfunction");
    return *ev;
}

inline bool is_eigen_combination(const ExpPoly& a) {
    return std::all_of(a.atoms().begin(), a.atoms().end(),
                       [](const Atom& at) { return laplacian_eigenvalue(at).has_value(); });
}

/// exp(theta * diffusivity * Laplacian) applied at a fixed time step theta.
inline ExpPoly heat_semigroup(const ExpPoly& a, double theta, double diffusivity) {
    std::vector<Atom> out;
    out.reserve(a.size());
    for (const auto& at : a.atoms()) {
        Complex ev = require_eigenvalue(at);
        Atom r = at;
        r.coeff *= std::exp(diffusivity * theta * ev);
        out.push_back(r);
    }
    return ExpPoly::from_atoms(std::move(out));
}

/// Same semigroup with symbolic time: every atom gains diffusivity*eigenvalue*t in its exponent.
/// Input must not depend on t.
inline ExpPoly heat_semigroup_in_time(const ExpPoly& a, double diffusivity) {
    if (a.depends_on(Var::t)) throw ProblemError("heat semigroup in time expects time-independent data");
    std::vector<Atom> out;
    out.reserve(a.size());
    for (const auto& at : a.atoms()) {
        Complex ev = require_eigenvalue(at);
        Atom r = at;
        r.exponent.set(Var::t, diffusivity * ev);
        out.push_back(r);
    }
    return ExpPoly::from_atoms(std::move(out));
}

}  // namespace pdeseries
