#pragma once

#include <optional>
#include <string>

#include "spinfetch/acquire.hpp"
#include "spinfetch/oracle.hpp"

namespace spinfetch {

struct ReadoutParams {
    double threshold_fraction = 0.2;
    std::optional<double> assign_tol_hz;  // default: min table gap / 4
};

struct OutputPaths {
    std::string spectrum_csv;
    std::string summary;
    std::string plot;
};

struct ExperimentConfig {
    SpinSystem system;
    AcqParams acquisition;
    MarkedSet marked;
    ReadoutParams readout;
    OutputPaths outputs;  // filled by the caller (CLI)
};

/// Resolution used for degeneracy checks: the larger of the DFT bin width
/// 1/(points*dwell) and the Lorentzian FWHM 1/(pi*T2).
double spectral_resolution_hz(const SpinSystem& sys, const AcqParams& params);

/// Parse the line-oriented key-value experiment format.
///
/// Sections and keys:
///   [system]       spins, offset.<j>, J.<j>.<k>, t2, marked
///   [acquisition]  dwell, points, reference, scale
///   [readout]      threshold, tol
/// '#' starts a comment; keys may not repeat. Parse problems throw
/// ConfigError with the line number; when `check` is set (the default) the
/// assembled config must also pass system and acquisition validation, else
/// ValidationFailure names the violated invariant.
ExperimentConfig parse_config(const std::string& text, bool check = true);

/// Validate an assembled config (system checks at the derived resolution,
/// acquisition window checks, readout parameter ranges). Throws
/// ValidationFailure on the first group of violations.
void check_config(const ExperimentConfig& config);

/// Pulse listing format, one event per line:
///   pulse <axis> <angle_deg> <spin> [spin ...]    axis in {x,y,z,-x,-y,-z}
///   delay <seconds> [nocouple]
///   grad
std::vector<PulseEvent> parse_sequence(const std::string& text);
std::string format_sequence(const std::vector<PulseEvent>& events);

}  // namespace spinfetch
