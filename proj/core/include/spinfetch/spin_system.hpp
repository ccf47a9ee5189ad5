#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spinfetch {

/// A weakly coupled spin-1/2 register plus one ancilla spin.
///
/// Spin 0 is the ancilla, spins 1..n_register hold the database index.
/// Frequencies are rotating-frame offsets in Hz; scalar couplings J are in
/// Hz. Internally Hamiltonians are expressed in rad/s; Hz values cross that
/// boundary only in build_hamiltonian / eigen_energy.
struct SpinSystem {
    int n_register = 0;
    std::vector<double> offset_hz;                  // size n_register + 1, [0] = ancilla
    std::vector<std::vector<double>> coupling_hz;   // symmetric, zero diagonal
    double t2_s = 1.0;                              // uniform transverse relaxation time
    std::map<std::uint32_t, double> t2_override_s;  // optional per-transition T2, keyed by register bits

    int spin_count() const { return n_register + 1; }
    std::size_t dim() const { return std::size_t{1} << spin_count(); }
    double t2_for(std::uint32_t register_bits) const;

    /// Convenience constructor: zero offsets, the given ancilla couplings
    /// J_{0k}, no register-register couplings.
    static SpinSystem with_ancilla_couplings(int n_register, const std::vector<double>& j0k_hz,
                                             double t2_s = 1.0);
};

/// One computational basis state |a, i_1 i_2 ... i_n>.
///
/// Bit convention follows the working medium: 0 = alpha (excited, high
/// frequency), 1 = beta. Spin 1 is the most significant register bit and the
/// ancilla bit sits above all register bits, so index = (a << n) | register.
struct BasisState {
    int ancilla = 0;
    std::uint32_t register_bits = 0;
    int n_register = 0;

    std::size_t index() const {
        return (std::size_t{static_cast<std::uint32_t>(ancilla)} << n_register) | register_bits;
    }
    static BasisState from_index(std::size_t index, int n_register);
    std::string register_string() const;
};

std::uint32_t parse_bits(const std::string& bits);
std::string format_bits(std::uint32_t bits, int n_register);

/// Ancilla transition frequencies, one per register state, sorted by
/// frequency descending (leftmost spectral line first). For register bits i,
/// freq = offset_0 + (1/2) * sum_k J_{0k} * (-1)^{i_k}.
struct TransitionRow {
    std::uint32_t register_bits = 0;
    double freq_hz = 0.0;
};

struct TransitionTable {
    int n_register = 0;
    std::vector<TransitionRow> rows;

    double min_gap_hz() const;
    double span_hz() const;
    double frequency_of(std::uint32_t register_bits) const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    double min_gap_hz = 0.0;

    bool ok() const { return violations.empty(); }
    std::string joined() const;
};

/// Closed-form eigen-energy of a basis state in rad/s:
///   (1/2) * [ sum_j (-1)^{b_j} w_j + sum_{j<k} pi J_jk (-1)^{b_j + b_k} ]
/// with w_j = 2*pi*offset_j. No diagonalization involved.
double eigen_energy(const SpinSystem& sys, const BasisState& state);

/// Throws DegenerateTransitions if two rows are closer than resolution_hz
/// (equal to it included); resolution 0 rejects exact coincidences only.
TransitionTable transition_table(const SpinSystem& sys, double resolution_hz = 0.0);

/// Structural checks: coupling symmetry, ancilla coupled to every register
/// spin, transitions distinct beyond the given resolution. Never throws; the
/// report carries the outcome.
ValidationReport validate(const SpinSystem& sys, double resolution_hz);

}  // namespace spinfetch
