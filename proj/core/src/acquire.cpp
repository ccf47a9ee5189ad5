#include "spinfetch/acquire.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spinfetch/errors.hpp"

namespace spinfetch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// In-place iterative radix-2 FFT, forward convention exp(-2 pi i k m / N).
void fft_pow2(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::complex<double> w_len = std::polar(1.0, -kTwoPi / static_cast<double>(len));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> even = data[i + k];
                const std::complex<double> odd = data[i + k + len / 2] * w;
                data[i + k] = even + odd;
                data[i + k + len / 2] = even - odd;
                w *= w_len;
            }
        }
    }
}

void check_acq(const AcqParams& params) {
    if (!(params.dwell_s > 0.0)) throw std::invalid_argument("dwell must be positive");
    if (params.points < 16) throw std::invalid_argument("points must be at least 16");
    if (!std::has_single_bit(static_cast<unsigned>(params.points)))
        throw std::invalid_argument("points must be a power of two");
}

}  // namespace

std::vector<AncillaLine> ancilla_lines(const DeviationDensity& state, const SpinSystem& sys) {
    if (state.dim() != sys.dim())
        throw Error("state dimension " + std::to_string(state.dim()) +
                    " does not match the system dimension " + std::to_string(sys.dim()));
    const std::uint32_t half = 1u << sys.n_register;
    std::vector<AncillaLine> lines;
    lines.reserve(half);
    for (std::uint32_t x = 0; x < half; ++x) {
        AncillaLine line;
        line.register_bits = x;
        // F+_{rs} = 1 only for r = |0,x>, s = |1,x>; residue is rho_{sr}.
        line.residue = state.matrix(static_cast<Eigen::Index>(half + x), static_cast<Eigen::Index>(x));
        const BasisState up{0, x, sys.n_register};
        const BasisState down{1, x, sys.n_register};
        line.omega_rad = eigen_energy(sys, up) - eigen_energy(sys, down);
        line.lambda = 1.0 / sys.t2_for(x);
        lines.push_back(line);
    }
    return lines;
}

DeviationDensity readout_pulse(const DeviationDensity& state, const SpinSystem& sys) {
    return apply_pulse(state, Rotation{Axis::Y, std::numbers::pi / 2, {0}}, sys);
}

Fid synthesize_fid(const DeviationDensity& state, const SpinSystem& sys, const AcqParams& params) {
    check_acq(params);
    const std::vector<AncillaLine> lines = ancilla_lines(state, sys);
    const double nyquist = 0.5 / params.dwell_s;
    for (const AncillaLine& line : lines) {
        const double offset = line.omega_rad / kTwoPi - params.reference_hz;
        if (std::abs(offset) >= nyquist) {
            std::ostringstream msg;
            msg << "transition " << format_bits(line.register_bits, sys.n_register) << " at "
                << line.omega_rad / kTwoPi << " Hz folds outside the +/-" << nyquist
                << " Hz window";
            throw SpectralFold(msg.str());
        }
    }

    Fid fid;
    fid.dwell_s = params.dwell_s;
    fid.samples.assign(static_cast<std::size_t>(params.points), {0.0, 0.0});
    for (const AncillaLine& line : lines) {
        if (line.residue == std::complex<double>{0.0, 0.0}) continue;
        const double omega = line.omega_rad - kTwoPi * params.reference_hz;
        // Per-sample propagator; fixed summation order keeps runs bit-identical.
        const std::complex<double> step =
            std::exp(std::complex<double>{-line.lambda * params.dwell_s, omega * params.dwell_s});
        std::complex<double> phase{1.0, 0.0};
        for (std::size_t k = 0; k < fid.samples.size(); ++k) {
            fid.samples[k] += params.scale * line.residue * phase;
            phase *= step;
        }
    }
    return fid;
}

Spectrum dft_spectrum(const Fid& fid, double reference_hz) {
    const std::size_t n = fid.samples.size();
    if (n < 16) throw std::invalid_argument("dft_spectrum: need at least 16 points");
    if (!std::has_single_bit(n)) throw std::invalid_argument("dft_spectrum: points must be a power of two");

    std::vector<std::complex<double>> bins = fid.samples;
    fft_pow2(bins);

    Spectrum spectrum;
    spectrum.provenance = Spectrum::Provenance::dft;
    spectrum.freq_hz.resize(n);
    spectrum.values.resize(n);
    const double df = 1.0 / (static_cast<double>(n) * fid.dwell_s);
    const auto half = static_cast<long>(n / 2);
    for (std::size_t j = 0; j < n; ++j) {
        // Ascending axis over (-1/(2 dwell), +1/(2 dwell)].
        const long m = static_cast<long>(j) - half + 1;
        spectrum.freq_hz[j] = static_cast<double>(m) * df + reference_hz;
        const std::size_t src = static_cast<std::size_t>((m + static_cast<long>(n)) % static_cast<long>(n));
        spectrum.values[j] = fid.dwell_s * bins[src];
    }
    return spectrum;
}

Spectrum closed_form_spectrum(const DeviationDensity& state, const SpinSystem& sys,
                              const AcqParams& params, const std::vector<double>& grid_hz) {
    for (std::size_t i = 1; i < grid_hz.size(); ++i)
        if (!(grid_hz[i] > grid_hz[i - 1]))
            throw std::invalid_argument("closed_form_spectrum: grid must be strictly increasing");

    const std::vector<AncillaLine> lines = ancilla_lines(state, sys);
    Spectrum spectrum;
    spectrum.provenance = Spectrum::Provenance::closed_form;
    spectrum.freq_hz = grid_hz;
    spectrum.values.assign(grid_hz.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < grid_hz.size(); ++i) {
        std::complex<double> value{0.0, 0.0};
        for (const AncillaLine& line : lines) {
            const double delta_omega = kTwoPi * grid_hz[i] - line.omega_rad;
            value += line.residue / std::complex<double>{line.lambda, delta_omega};
        }
        spectrum.values[i] = params.scale * value;
    }
    return spectrum;
}

}  // namespace spinfetch
