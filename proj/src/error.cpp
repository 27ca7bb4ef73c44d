#include "mcres/error.hpp"

namespace mcres {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorKind::NegativeEntry: return "NegativeEntry";
        case ErrorKind::RowSumOutOfTolerance: return "RowSumOutOfTolerance";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::NotErgodic: return "NotErgodic";
        case ErrorKind::RandomTargetViolation: return "RandomTargetViolation";
        case ErrorKind::SinkhornNoConvergence: return "SinkhornNoConvergence";
        case ErrorKind::NotDoublyStochastic: return "NotDoublyStochastic";
        case ErrorKind::NotReversible: return "NotReversible";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::MaxStepsExceeded: return "MaxStepsExceeded";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace mcres
