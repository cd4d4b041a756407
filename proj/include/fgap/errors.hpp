#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DegenerateError : Error {
    using Error::Error;
};

struct BracketError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

// Raised when a computed quantity contradicts a claim it was supposed to certify.
struct CertificationError : Error {
    using Error::Error;
};

// Quadrature or series did not reach the requested accuracy.
struct ToleranceError : Error {
    ToleranceError(const std::string& what, double best, double err)
        : Error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    std::size_t line;
};

struct MonotonicityError : ParseError {
    using ParseError::ParseError;
};

}  // namespace fgap
