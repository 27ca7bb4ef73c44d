#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcres {

enum class ErrorKind {
    NotSquare,
    ShapeMismatch,
    NonFiniteEntry,
    NegativeEntry,
    RowSumOutOfTolerance,
    SingularMatrix,
    NoConvergence,
    NotErgodic,
    RandomTargetViolation,
    SinkhornNoConvergence,
    NotDoublyStochastic,
    NotReversible,
    HypothesisViolated,
    TooLarge,
    MaxStepsExceeded,
    InvalidArgument,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `kind()` is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mcres
