#pragma once

#include <stdexcept>
#include <string>

namespace rrb {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented type or argument invariant was violated (named in the message).
struct InvariantViolation : Error {
    using Error::Error;
};

/// Config-file syntax error; carries the 1-based line number.
struct ParseError : Error {
    ParseError(int line_, const std::string& what_)
        : Error("line " + std::to_string(line_) + ": " + what_), line{line_} {}
    int line;
};

/// A curve-family parameter came too close to one of the poles a1, a2, a3.
struct PoleProximity : Error {
    using Error::Error;
};

/// A line family (E3/E4/E5) was requested but its control is nonzero.
struct FamilyNotApplicable : Error {
    using Error::Error;
};

/// The Lyapunov quadratic form requires lambda < 0.
struct LambdaNotNegative : Error {
    using Error::Error;
};

/// Theorem-based classification requires epsilon > 0.
struct EpsilonNotPositive : Error {
    using Error::Error;
};

/// Generic metric builder accepts dimensions 2..16 only.
struct DimensionOutOfRange : Error {
    using Error::Error;
};

/// The requested energy level lies below the global minimum of H.
struct EmptyLevel : Error {
    using Error::Error;
};

/// A Runge-Kutta stage evaluated to a non-finite value.
struct StepFailure : Error {
    using Error::Error;
};

}  // namespace rrb
