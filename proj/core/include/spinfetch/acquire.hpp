#pragma once

#include <complex>
#include <vector>

#include "spinfetch/prep.hpp"

namespace spinfetch {

struct AcqParams {
    double dwell_s = 1.0 / 1024.0;  // seconds per sample
    int points = 16384;             // power of two, >= 16
    double reference_hz = 0.0;      // rotating-frame origin of the axis
    double scale = 1.0;             // overall signal constant (spins per volume, gamma, hbar)
};

struct Fid {
    std::vector<std::complex<double>> samples;
    double dwell_s = 0.0;
};

struct Spectrum {
    enum class Provenance { dft, closed_form };
    std::vector<double> freq_hz;  // strictly increasing
    std::vector<std::complex<double>> values;
    Provenance provenance = Provenance::dft;

    std::size_t size() const { return freq_hz.size(); }
};

/// One observable ancilla line: the coherence between |0,x> and |1,x>.
struct AncillaLine {
    std::uint32_t register_bits = 0;
    std::complex<double> residue;  // F+_{rs} rho_{sr} for this transition
    double omega_rad = 0.0;        // transition frequency, rad/s
    double lambda = 0.0;           // decay rate 1/T2 for this transition
};

/// Residues, frequencies and decay rates of all 2^n ancilla transitions for
/// a given state. Detection uses the ancilla-only raising operator; with
/// only ancilla coherences excited this equals the full F+ readout.
std::vector<AncillaLine> ancilla_lines(const DeviationDensity& state, const SpinSystem& sys);

/// Readout excitation: (pi/2)_y on the ancilla only, converting ancilla
/// population differences into observable single-quantum coherences.
DeviationDensity readout_pulse(const DeviationDensity& state, const SpinSystem& sys);

/// Complex free induction decay: each transition evolves independently,
///   samples[k] = scale * sum_lines residue * exp{(i(w - 2 pi ref) - lambda) k dwell}.
/// Throws SpectralFold if a transition falls outside the sampled bandwidth.
Fid synthesize_fid(const DeviationDensity& state, const SpinSystem& sys, const AcqParams& params);

/// Discrete Fourier transform scaled by dwell so amplitudes approximate the
/// continuous line shapes; frequency axis ascending over
/// (-1/(2 dwell), +1/(2 dwell)] shifted by the reference.
Spectrum dft_spectrum(const Fid& fid, double reference_hz = 0.0);

/// Closed-form complex spectrum on an arbitrary ascending grid:
///   S(f) = scale * sum_lines residue / (i(2 pi f - w) + lambda).
/// The real part is the absorption spectrum used for readout.
Spectrum closed_form_spectrum(const DeviationDensity& state, const SpinSystem& sys,
                              const AcqParams& params, const std::vector<double>& grid_hz);

}  // namespace spinfetch
