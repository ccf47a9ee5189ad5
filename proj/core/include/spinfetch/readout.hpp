#pragma once

#include <optional>
#include <vector>

#include "spinfetch/acquire.hpp"
#include "spinfetch/oracle.hpp"
#include "spinfetch/spin_system.hpp"

namespace spinfetch {

struct Peak {
    double freq_hz = 0.0;  // parabolic-interpolated extremum position
    double height = 0.0;   // signed absorption amplitude
    std::optional<std::uint32_t> assigned;  // register bits, once matched to the table
};

struct FetchResult {
    MarkedSet marked;                    // assigned bitstrings with downward peaks
    std::vector<std::uint32_t> unmarked; // assigned bitstrings with upward peaks
    std::vector<std::uint32_t> unseen;   // table rows with no peak (never silently dropped)
    std::vector<Peak> peaks;
};

/// Local extrema of the real part with |height| >= threshold_fraction *
/// max|real|, positions refined by three-point parabolic interpolation,
/// sorted by frequency descending (spectral left to right).
/// Throws NoPeaks when nothing exceeds the threshold.
std::vector<Peak> detect_peaks(const Spectrum& spectrum, double threshold_fraction);

/// Match each peak to the unique table row within tol_hz. Unmatched peaks
/// stay unassigned; a row may receive at most one peak.
std::vector<Peak> assign_peaks(std::vector<Peak> peaks, const TransitionTable& table,
                               double tol_hz);

/// Decode the spectrum: downward peaks name the marked items.
FetchResult fetch_marked(const Spectrum& spectrum, const TransitionTable& table,
                         double threshold_fraction, double tol_hz);

}  // namespace spinfetch
