#pragma once

#include <optional>

#include "spinfetch/config.hpp"
#include "spinfetch/readout.hpp"

namespace spinfetch {

struct RunOptions {
    /// Replace the compiled query matrix with an externally built unitary
    /// (e.g. one assembled from a pulse listing). Dimensions must match.
    std::optional<Eigen::MatrixXcd> oracle_override;
};

struct ExperimentReport {
    ExperimentConfig config;   // defaults resolved
    TransitionTable table;
    double resolution_hz = 0.0;
    double assign_tol_hz = 0.0;
    Fid fid;
    Spectrum dft;
    Spectrum closed_form;
    double max_real_deviation = 0.0;  // max |Re dft - Re closed_form| over the grid
    double tallest_peak = 0.0;        // max |Re closed_form|
    FetchResult fetch;
    int oracle_applications = 0;      // must be 1 for a valid run
};

/// The full experiment: prepare -> single query -> readout pulse -> FID +
/// DFT spectrum and closed-form cross-check -> peak decoding. Throws on any
/// module error.
ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace spinfetch
