#pragma once

#include <string>

#include "spinfetch/pipeline.hpp"

namespace spinfetch {

/// CSV with header `freq_hz,real,imag`, frequencies ascending, shortest
/// round-trippable decimal representation (locale independent).
std::string spectrum_csv(const Spectrum& spectrum);
void write_spectrum_csv(const Spectrum& spectrum, const std::string& path);
Spectrum read_spectrum_csv(const std::string& path);

/// Human-readable run summary; byte-stable for identical inputs.
std::string summary_text(const ExperimentReport& report);

/// Machine-readable summary (JSON) with peaks, assignments and signs.
std::string summary_json(const ExperimentReport& report);

/// Self-contained SVG of the real part, frequency axis descending left to
/// right (spectrometer convention).
std::string spectrum_svg(const Spectrum& spectrum, const std::string& title);
void emit_plot(const Spectrum& spectrum, const std::string& path, const std::string& title);

/// Terminal rendering of the real part on a character grid, axis descending
/// left to right.
std::string ascii_plot(const Spectrum& spectrum, int width = 72, int height = 15);

/// Locale-independent shortest-precise formatting used by all exports.
std::string format_double(double value);

}  // namespace spinfetch
