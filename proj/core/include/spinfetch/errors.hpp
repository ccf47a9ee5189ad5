#pragma once

#include <stdexcept>
#include <string>

namespace spinfetch {

// Base class for all simulator errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two ancilla transitions closer than the configured resolution; the
// working medium cannot address all register states.
struct DegenerateTransitions : Error {
    using Error::Error;
};

// Operation requires a population-only (diagonal) state.
struct NotDiagonal : Error {
    using Error::Error;
};

// A transition frequency lies outside the sampled bandwidth and would alias.
struct SpectralFold : Error {
    using Error::Error;
};

// No spectral extremum above the detection threshold.
struct NoPeaks : Error {
    using Error::Error;
};

// More than one transition lies within the assignment tolerance of a peak.
struct AmbiguousAssignment : Error {
    using Error::Error;
};

// Two peaks claim the same transition.
struct DuplicateAssignment : Error {
    using Error::Error;
};

// Configuration or sequence text could not be parsed.
struct ConfigError : Error {
    ConfigError(const std::string& what, int line_no)
        : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    int line;
};

// Parsed input violates a system or acquisition invariant.
struct ValidationFailure : Error {
    using Error::Error;
};

}  // namespace spinfetch
