#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "edp/types.hpp"

namespace edp {

// Root of the library's exception hierarchy.  Every condition the library
// detects and reports deliberately derives from this type, so callers can
// separate "the model told you no" from genuine programming errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A normalization bracket came out non-positive: the state cannot be
// normalized under the modified product and the model is unusable there.
class NonPositiveNorm : public Error {
public:
    NonPositiveNorm(int n, real bracket_value)
        : Error("normalization bracket for level " + std::to_string(n) +
                " is non-positive (" + std::to_string(bracket_value) + ")"),
          level(n), bracket(bracket_value) {}
    int level;
    real bracket;
};

// The closed-form spectrum turns complex above some level.
class ComplexEigenvalue : public Error {
public:
    ComplexEigenvalue(int requested, int first_complex)
        : Error("eigenvalue for level " + std::to_string(requested) +
                " is complex; levels are real only below n = " +
                std::to_string(first_complex)),
          level(requested), critical_level(first_complex) {}
    int level;          // the level that was requested
    int critical_level; // smallest n whose eigenvalue is complex
};

// Every even moment of the state is positive: there is no finite order at
// which the leading factor changes sign.
class NoCriticalOrder : public Error {
public:
    explicit NoCriticalOrder(int n)
        : Error("no finite moment order changes sign for level " +
                std::to_string(n)),
          level(n) {}
    int level;
};

// A root bracket could not be established for a scalar solve.
class BracketFailure : public Error {
public:
    explicit BracketFailure(const std::string& what_failed)
        : Error("failed to bracket a root: " + what_failed) {}
};

// Errors raised by the potential-expression parser.
class ParseError : public Error {
public:
    ParseError(std::size_t at, const std::string& expected_tokens,
               const std::string& found)
        : Error("parse error at offset " + std::to_string(at) + ": expected " +
                expected_tokens + ", found " + found),
          offset(at), expected(expected_tokens) {}
    std::size_t offset;
    std::string expected;
};

// Evaluation of an expression left the real domain (sqrt of a negative,
// division by zero, ...).  Carries the offending subexpression in printed
// form so diagnostics can point at the exact term.
class DomainError : public Error {
public:
    DomainError(const std::string& subexpression, real at_x, real at_e)
        : Error("domain error evaluating \"" + subexpression + "\" at x = " +
                std::to_string(at_x) + ", E = " + std::to_string(at_e)),
          subexpr(subexpression), x(at_x), e(at_e) {}
    std::string subexpr;
    real x, e;
};

// The frozen potential does not confine: its edge values do not rise above
// the well bottom, so no bound spectrum exists on the chosen box.
class NotConfining : public Error {
public:
    explicit NotConfining(const std::string& detail)
        : Error("potential is not confining: " + detail) {}
};

// The requested node count cannot be reached inside the well: the level
// would lie above the confining barrier at the box edge.
class NodeCountUnreachable : public Error {
public:
    NodeCountUnreachable(int wanted, int reachable)
        : Error("cannot reach " + std::to_string(wanted) +
                " nodes inside the well (at most " + std::to_string(reachable) +
                " levels are held)"),
          requested(wanted), max_reachable(reachable) {}
    int requested;
    int max_reachable;
};

// The multiplicative factor of the similarity transform loses positivity
// somewhere in the working interval, so the transform is not defined there.
class KappaNonPositive : public Error {
public:
    explicit KappaNonPositive(real at_x)
        : Error("transform factor loses positivity near |x| = " +
                std::to_string(at_x)),
          x(at_x) {}
    real x;
};

// A rational operator has a pole inside the integration support; its
// quadrature average is meaningless.
class PathologicalOperator : public Error {
public:
    PathologicalOperator(real pole_at, real support_halfwidth)
        : Error("operator has a pole at |x| = " + std::to_string(pole_at) +
                " inside the integration support |x| <= " +
                std::to_string(support_halfwidth)),
          pole(pole_at), support(support_halfwidth) {}
    real pole;
    real support;
};

// Configuration-level problem: unknown keys, unreadable files, bad values.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& detail)
        : Error("configuration error: " + detail) {}
};

} // namespace edp
