#pragma once

#include <charconv>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdeseries {

namespace detail {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_number(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(std::complex<double> c) {
    if (c.imag() == 0.0) return format_number(c.real());
    std::string im = c.imag() == 1.0 ? "i" : c.imag() == -1.0 ? "-i" : format_number(c.imag()) + "*i";
    if (c.real() == 0.0) return im;
    if (im.front() != '-') im = "+" + im;
    return "(" + format_number(c.real()) + im + ")";
}

}  // namespace detail

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Invalid problem definition (violated invariant of an input record).
class ProblemError : public Error {
public:
    using Error::Error;
};

/// Failure of a solver. `step()` is the series index being computed, or -1.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& detail, int step = -1)
        : Error(step >= 0 ? detail + " (step " + std::to_string(step) + ")" : detail),
          detail_(detail),
          step_(step) {}

    const std::string& detail() const noexcept { return detail_; }
    int step() const noexcept { return step_; }

private:
    std::string detail_;
    int step_;
};

class ResonanceError : public SolverError {
public:
    explicit ResonanceError(std::complex<double> lambda, int step = -1)
        : SolverError("resonance: operator not invertible on exponential class lambda = " +
                          detail::format_complex(lambda),
                      step),
          lambda_(lambda) {}

    std::complex<double> lambda() const noexcept { return lambda_; }

private:
    std::complex<double> lambda_;
};

class AtomOverflowError : public SolverError {
public:
    AtomOverflowError(std::size_t count, std::size_t cap, int step = -1)
        : SolverError("atom count " + std::to_string(count) + " exceeds cap " + std::to_string(cap), step),
          count_(count),
          cap_(cap) {}

    std::size_t count() const noexcept { return count_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t count_;
    std::size_t cap_;
};

class NonEigenAtomError : public SolverError {
public:
    using SolverError::SolverError;
};

class ZeroEigenvalueError : public SolverError {
public:
    using SolverError::SolverError;
};

class UnsupportedTimeDependenceError : public SolverError {
public:
    using SolverError::SolverError;
};

class StencilOutOfRangeError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    using Error::Error;
};

}  // namespace pdeseries
