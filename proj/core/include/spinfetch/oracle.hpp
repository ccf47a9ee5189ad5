#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinfetch/prep.hpp"

namespace spinfetch {

/// The database items z with f(z) = 1. May be empty or hold all 2^n items.
struct MarkedSet {
    int n_register = 0;
    std::vector<std::uint32_t> items;  // sorted ascending, unique

    bool contains(std::uint32_t x) const;
    bool empty() const { return items.empty(); }
    std::size_t size() const { return items.size(); }

    /// Parse comma-separated bitstrings, e.g. "10,11"; "" is the empty set.
    static MarkedSet parse(const std::string& csv, int n_register);
    std::string to_string() const;

    bool operator==(const MarkedSet&) const = default;
};

/// Query unitary |a, x> -> |a xor [x in marked], x>: a self-inverse
/// permutation with exact 0/1 entries, identity on the register bits.
struct OracleUnitary {
    Eigen::MatrixXcd matrix;
    MarkedSet marked;
};

OracleUnitary compile_oracle(const SpinSystem& sys, const MarkedSet& marked);

/// One query: U rho U+. The experiment driver counts calls; a run is valid
/// only if the count is exactly 1.
DeviationDensity apply_query(const DeviationDensity& state, const OracleUnitary& oracle);

/// Query functional f = Tr{ U I_0a rho_in U+ I_0z } on a register-space
/// density (the ancilla-alpha extension is built internally). Pure items
/// score +1/2 when unmarked and -1/2 when marked.
double query_value(const Eigen::MatrixXcd& register_density, const OracleUnitary& oracle);

/// Same functional on a prepared full-dimension state; the carried identity
/// offset is restored before taking the trace.
double query_value(const DeviationDensity& prepared, const OracleUnitary& oracle);

/// Mixed-state form: sum of weighted pure-item query values (ancilla reset
/// to alpha for each sub-ensemble).
double ensemble_query(const std::vector<SubEnsemble>& subs, const OracleUnitary& oracle);

/// Net unitary of a pulse listing: ordered product of rotation exponentials
/// and exp(-iH tau) delay factors. Gradient events are rejected (they have
/// no unitary representation).
Operator pulse_unitary(const std::vector<PulseEvent>& events, const SpinSystem& sys);

}  // namespace spinfetch
