#pragma once

// Problem-definition files:
//
//   # comment
//   [evolution]            one of evolution | heat | ball | flow
//   key = value
//
// Keys per kind:
//   evolution  a.<m>, b.<m>, c, i, k, h
//   heat       a2, u0
//   ball       a2, T0 | V0, R, hbc
//   flow       nu, u0 | curl_u0, curl_f, f, phi, ref, p0
//
// Vector values are written [e1, e2, e3]; phi is none, inverse_radius,
// inverse_radius(<amplitude>) or an expression; ref is x0, y0, z0[, t0].

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pdeseries/diffusion.hpp"
#include "pdeseries/evolution.hpp"
#include "pdeseries/flow.hpp"
#include "pdeseries/parse.hpp"

namespace pdeseries {

enum class ProblemKind { Evolution, Heat, Ball, Flow };

inline const char* kind_name(ProblemKind k) {
    switch (k) {
        case ProblemKind::Evolution: return "evolution";
        case ProblemKind::Heat: return "heat";
        case ProblemKind::Ball: return "ball";
        case ProblemKind::Flow: return "flow";
    }
    return "?";
}

struct ProblemFile {
    ProblemKind kind = ProblemKind::Evolution;
    std::variant<EvolutionProblem, HeatProblem, BallProblem, FlowProblem> problem;
};

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

class FileReader {
public:
    struct Entry {
        std::string value;
        int line;
    };

    explicit FileReader(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = trim(raw.substr(0, raw.find('#')));
            if (s.empty()) continue;
            if (!kind_) {
                if (s.size() < 3 || s.front() != '[' || s.back() != ']')
                    fail(line, "expected a kind header such as [evolution]");
                std::string k = trim(s.substr(1, s.size() - 2));
                if (k == "evolution")
                    kind_ = ProblemKind::Evolution;
                else if (k == "heat")
                    kind_ = ProblemKind::Heat;
                else if (k == "ball")
                    kind_ = ProblemKind::Ball;
                else if (k == "flow")
                    kind_ = ProblemKind::Flow;
                else
                    fail(line, "unknown problem kind '" + k + "'");
                continue;
            }
            if (s.front() == '[') fail(line, "a problem file holds exactly one kind");
            auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected key = value");
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            if (key.empty()) fail(line, "empty key");
            if (entries_.count(key)) fail(line, "duplicate key '" + key + "'");
            entries_[key] = {value, line};
        }
        if (!kind_) throw ProblemError("problem file has no kind header");
    }

    ProblemKind kind() const { return *kind_; }
    const std::map<std::string, Entry>& entries() const { return entries_; }

    const Entry* find(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    [[noreturn]] static void fail(int line, const std::string& msg) {
        throw ProblemError("line " + std::to_string(line) + ": " + msg);
    }

    static double number(const Entry& e) {
        double v = 0.0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        auto res = std::from_chars(b, end, v);
        if (res.ec != std::errc{} || res.ptr != end) fail(e.line, "expected a number, got '" + e.value + "'");
        return v;
    }

    static unsigned positive_integer(const Entry& e) {
        unsigned v = 0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        auto res = std::from_chars(b, end, v);
        if (res.ec != std::errc{} || res.ptr != end || v == 0)
            fail(e.line, "expected a positive integer, got '" + e.value + "'");
        return v;
    }

    static ExpPoly expression(const Entry& e) {
        try {
            return parse(e.value);
        } catch (const ParseError& err) {
            fail(e.line, std::string("parse error: ") + err.what());
        }
    }

    static std::vector<std::string> split_top_level(const std::string& s) {
        std::vector<std::string> parts;
        int depth = 0;
        std::string cur;
        for (char c : s) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                parts.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(trim(cur));
        return parts;
    }

    static VectorField vector(const Entry& e) {
        const std::string& v = e.value;
        if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(e.line, "expected a vector [e1, e2, e3]");
        auto parts = split_top_level(v.substr(1, v.size() - 2));
        if (parts.size() != 3) fail(e.line, "a vector needs exactly three components");
        VectorField out;
        for (std::size_t k = 0; k < 3; ++k) out[k] = expression({parts[k], e.line});
        return out;
    }

private:
    std::optional<ProblemKind> kind_;
    std::map<std::string, Entry> entries_;
};

inline void reject_unknown(const FileReader& r, const std::set<std::string>& allowed, bool allow_indexed_ab = false) {
    for (const auto& [key, entry] : r.entries()) {
        if (allowed.count(key)) continue;
        if (allow_indexed_ab && key.size() > 2 && (key[0] == 'a' || key[0] == 'b') && key[1] == '.') continue;
        FileReader::fail(entry.line, "unknown key '" + key + "'");
    }
}

inline const FileReader::Entry& require(const FileReader& r, const std::string& key) {
    const auto* e = r.find(key);
    if (!e) throw ProblemError("missing required key '" + key + "'");
    return *e;
}

inline EvolutionProblem read_evolution(const FileReader& r) {
    reject_unknown(r, {"c", "i", "k", "h"}, true);
    EvolutionProblem p;
    for (const auto& [key, entry] : r.entries()) {
        if (key.size() > 2 && key[1] == '.') {
            unsigned m = 0;
            auto res = std::from_chars(key.data() + 2, key.data() + key.size(), m);
            if (res.ec != std::errc{} || res.ptr != key.data() + key.size())
                FileReader::fail(entry.line, "bad derivative order in key '" + key + "'");
            (key[0] == 'a' ? p.a : p.b)[m] = FileReader::number(entry);
        }
    }
    if (const auto* e = r.find("c")) p.c = FileReader::number(*e);
    if (const auto* e = r.find("i")) p.mixed_order = FileReader::positive_integer(*e);
    if (const auto* e = r.find("k")) p.nonlin_exponent = FileReader::positive_integer(*e);
    const auto& h = require(r, "h");
    p.initial = h.value.empty() ? ExpPoly{} : FileReader::expression(h);
    return p;
}

inline HeatProblem read_heat(const FileReader& r) {
    reject_unknown(r, {"a2", "u0"});
    HeatProblem p;
    p.diffusivity = FileReader::number(require(r, "a2"));
    const auto& u0 = require(r, "u0");
    p.initial = u0.value.empty() ? ExpPoly{} : FileReader::expression(u0);
    return p;
}

inline BallProblem read_ball(const FileReader& r) {
    reject_unknown(r, {"a2", "T0", "V0", "R", "hbc"});
    double a2 = FileReader::number(require(r, "a2"));
    const auto* t0 = r.find("T0");
    const auto* v0 = r.find("V0");
    if ((t0 == nullptr) == (v0 == nullptr)) throw ProblemError("ball problem needs exactly one of T0 or V0");
    BallProblem p = t0 ? BallProblem::from_temperature(a2, FileReader::expression(*t0))
                       : BallProblem::from_scaled(a2, FileReader::expression(*v0));
    if (const auto* e = r.find("R")) p.radius = FileReader::number(*e);
    if (const auto* e = r.find("hbc")) p.boundary_h = FileReader::number(*e);
    return p;
}

inline FlowProblem read_flow(const FileReader& r) {
    reject_unknown(r, {"nu", "u0", "curl_u0", "curl_f", "f", "phi", "ref", "p0"});
    FlowProblem p;
    p.viscosity = FileReader::number(require(r, "nu"));
    const auto* u0 = r.find("u0");
    const auto* w0 = r.find("curl_u0");
    if (u0 && w0) FileReader::fail(w0->line, "give either u0 or curl_u0, not both");
    if (u0) p.initial_velocity = FileReader::vector(*u0);
    if (w0) p.initial_vorticity = FileReader::vector(*w0);
    if (const auto* e = r.find("curl_f")) p.forcing_curl = FileReader::vector(*e);
    if (const auto* e = r.find("f")) p.forcing = FileReader::vector(*e);
    if (const auto* e = r.find("phi")) {
        const std::string& v = e->value;
        if (v == "none" || v.empty()) {
            p.potential = std::monostate{};
        } else if (v.rfind("inverse_radius", 0) == 0) {
            std::string rest = trim(v.substr(std::string("inverse_radius").size()));
            InverseRadiusPotential ir;
            if (!rest.empty()) {
                if (rest.front() != '(' || rest.back() != ')') FileReader::fail(e->line, "expected inverse_radius(<amplitude>)");
                ir.amplitude = FileReader::number({trim(rest.substr(1, rest.size() - 2)), e->line});
            }
            p.potential = ir;
        } else {
            p.potential = FileReader::expression(*e);
        }
    }
    if (const auto* e = r.find("ref")) {
        auto parts = FileReader::split_top_level(e->value);
        if (parts.size() != 3 && parts.size() != 4) FileReader::fail(e->line, "ref needs x0, y0, z0[, t0]");
        for (std::size_t k = 0; k < parts.size(); ++k) p.reference[k] = FileReader::number({parts[k], e->line});
    }
    if (const auto* e = r.find("p0")) p.reference_pressure = FileReader::number(*e);
    return p;
}

}  // namespace detail

inline ProblemFile parse_problem_file(std::string_view text) {
    detail::FileReader reader(text);
    ProblemFile f;
    f.kind = reader.kind();
    switch (f.kind) {
        case ProblemKind::Evolution: f.problem = detail::read_evolution(reader); break;
        case ProblemKind::Heat: f.problem = detail::read_heat(reader); break;
        case ProblemKind::Ball: f.problem = detail::read_ball(reader); break;
        case ProblemKind::Flow: f.problem = detail::read_flow(reader); break;
    }
    return f;
}

inline ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemError("cannot open problem file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem_file(buf.str());
}

}  // namespace pdeseries
