#pragma once

#include <stdexcept>
#include <string>

namespace svcbond {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed value or argument (bad intervals, empty inputs, range violations).
struct InvalidInputError : Error {
    using Error::Error;
};

// A timestamp fell outside a signal or schedule horizon.
struct OutOfHorizonError : Error {
    using Error::Error;
};

// Two traces cannot be compared (timestamp or arity mismatch).
struct IncompatibleTracesError : Error {
    using Error::Error;
};

// Period-halving search exhausted its halving budget.
struct NonConvergenceError : Error {
    using Error::Error;
};

// Illegal (phase, event) pair in the service cycle.
struct InvalidTransitionError : Error {
    using Error::Error;
};

// Negotiation refused the requested audit kind.
struct NegotiationRejectedError : Error {
    using Error::Error;
};

// Delivered data does not cover the agreed review period.
struct InsufficientDataError : Error {
    using Error::Error;
};

// Naive interaction form saw zero or several providers.
struct AmbiguousNaiveError : Error {
    using Error::Error;
};

// Minimum quotas cannot be satisfied by the available capacity.
struct InfeasibleQuotaError : Error {
    using Error::Error;
};

// Flow gating was asked about a device that is not registered.
struct UnknownDeviceError : Error {
    using Error::Error;
};

// Text input failed to parse; carries the 1-based line number.
struct ParseError : Error {
    ParseError(int line_number, const std::string& what)
        : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};

}  // namespace svcbond
