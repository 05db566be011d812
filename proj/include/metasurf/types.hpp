// metasurf/types.hpp
//
// Small shared vocabulary types: complex scalars, 2D points, error
// categories used across the solver.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace metasurf {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }

struct Vec2c {
    Complex c1{};
    Complex c2{};
};

// Error taxonomy mirrored by the C API status codes and CLI exit codes.
enum class ErrorKind {
    invalid_argument,  // malformed input, bad call
    validation,        // a modelling assumption on (geometry, wave) is violated
    numerical,         // conditioning, extraction, or convergence refusal
    io,                // file handling
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string condition, const std::string& message)
        : std::runtime_error(message), kind_(kind), condition_(std::move(condition)) {}

    ErrorKind kind() const { return kind_; }
    // Short machine-readable name of the violated condition, e.g.
    // "delta*k < 2*pi - |delta*k1|".
    const std::string& condition() const { return condition_; }

  private:
    ErrorKind kind_;
    std::string condition_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& condition,
                              const std::string& message) {
    throw Error(kind, condition, message);
}

}  // namespace metasurf
