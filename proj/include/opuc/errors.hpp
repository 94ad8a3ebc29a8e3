#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opuc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction parameters for a measure (arc width, atom masses, duplicate angles).
class InvalidMeasure : public Error {
public:
    using Error::Error;
};

/// Grid doubling on a density piece hit the point cap before successive estimates agreed.
class QuadratureNonConvergence : public Error {
public:
    using Error::Error;
};

/// The Verblunsky recursion produced |alpha_n| >= 1 - 1e-12, i.e. the measure behaves as if
/// it were supported on at most n points.
class DegenerateMeasure : public Error {
public:
    DegenerateMeasure(const std::string& what, int degree)
        : Error(what), degree_(degree) {}

    [[nodiscard]] int degree() const noexcept { return degree_; }

private:
    int degree_;
};

/// The para-orthogonal zero finder could not isolate exactly n+1 distinct unimodular zeros.
class NodeFindingFailure : public Error {
public:
    using Error::Error;
};

/// Malformed measure spec or config text. position is a 0-based character offset.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace opuc
