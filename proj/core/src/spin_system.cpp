#include "spinfetch/spin_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spinfetch/errors.hpp"

namespace spinfetch {

namespace {

int bit_of(std::uint32_t bits, int position, int width) {
    // position counts from the left: position 0 is spin 1 (most significant).
    return static_cast<int>((bits >> (width - 1 - position)) & 1u);
}

int spin_bit(const BasisState& s, int spin) {
    if (spin == 0) return s.ancilla;
    return bit_of(s.register_bits, spin - 1, s.n_register);
}

}  // namespace

double SpinSystem::t2_for(std::uint32_t register_bits) const {
    auto it = t2_override_s.find(register_bits);
    return it == t2_override_s.end() ? t2_s : it->second;
}

SpinSystem SpinSystem::with_ancilla_couplings(int n_register, const std::vector<double>& j0k_hz,
                                              double t2_s) {
    if (static_cast<int>(j0k_hz.size()) != n_register)
        throw std::invalid_argument("with_ancilla_couplings: need one J per register spin");
    SpinSystem sys;
    sys.n_register = n_register;
    sys.offset_hz.assign(n_register + 1, 0.0);
    sys.coupling_hz.assign(n_register + 1, std::vector<double>(n_register + 1, 0.0));
    for (int k = 1; k <= n_register; ++k) {
        sys.coupling_hz[0][k] = j0k_hz[k - 1];
        sys.coupling_hz[k][0] = j0k_hz[k - 1];
    }
    sys.t2_s = t2_s;
    return sys;
}

BasisState BasisState::from_index(std::size_t index, int n_register) {
    BasisState s;
    s.n_register = n_register;
    s.ancilla = static_cast<int>(index >> n_register) & 1;
    s.register_bits = static_cast<std::uint32_t>(index & ((std::size_t{1} << n_register) - 1));
    return s;
}

std::string BasisState::register_string() const {
    return format_bits(register_bits, n_register);
}

std::uint32_t parse_bits(const std::string& bits) {
    std::uint32_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw Error("bitstring must contain only 0/1: '" + bits + "'");
        value = (value << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return value;
}

std::string format_bits(std::uint32_t bits, int n_register) {
    std::string s(static_cast<std::size_t>(n_register), '0');
    for (int i = 0; i < n_register; ++i)
        if ((bits >> (n_register - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

double TransitionTable::min_gap_hz() const {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < rows.size(); ++i)
        gap = std::min(gap, rows[i - 1].freq_hz - rows[i].freq_hz);
    return gap;
}

double TransitionTable::span_hz() const {
    if (rows.empty()) return 0.0;
    return rows.front().freq_hz - rows.back().freq_hz;
}

double TransitionTable::frequency_of(std::uint32_t register_bits) const {
    for (const auto& row : rows)
        if (row.register_bits == register_bits) return row.freq_hz;
    throw Error("no transition for register state " + format_bits(register_bits, n_register));
}

std::string ValidationReport::joined() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) out << "; ";
        out << violations[i];
    }
    return out.str();
}

double eigen_energy(const SpinSystem& sys, const BasisState& state) {
    const int spins = sys.spin_count();
    double energy = 0.0;
    for (int j = 0; j < spins; ++j) {
        const double sign_j = spin_bit(state, j) ? -1.0 : 1.0;
        energy += sign_j * 2.0 * std::numbers::pi * sys.offset_hz[j];
        for (int k = j + 1; k < spins; ++k) {
            const double sign_k = spin_bit(state, k) ? -1.0 : 1.0;
            energy += std::numbers::pi * sys.coupling_hz[j][k] * sign_j * sign_k;
        }
    }
    return 0.5 * energy;
}

TransitionTable transition_table(const SpinSystem& sys, double resolution_hz) {
    const std::uint32_t count = 1u << sys.n_register;
    TransitionTable table;
    table.n_register = sys.n_register;
    table.rows.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        double freq = sys.offset_hz[0];
        for (int k = 1; k <= sys.n_register; ++k) {
            const double sign = ((i >> (sys.n_register - k)) & 1u) ? -1.0 : 1.0;
            freq += 0.5 * sys.coupling_hz[0][k] * sign;
        }
        table.rows.push_back({i, freq});
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const TransitionRow& a, const TransitionRow& b) {
        if (a.freq_hz != b.freq_hz) return a.freq_hz > b.freq_hz;
        return a.register_bits < b.register_bits;
    });
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        const double gap = table.rows[i - 1].freq_hz - table.rows[i].freq_hz;
        if (gap <= resolution_hz) {
            std::ostringstream msg;
            msg << "transitions " << format_bits(table.rows[i - 1].register_bits, sys.n_register)
                << " and " << format_bits(table.rows[i].register_bits, sys.n_register)
                << " separated by " << gap << " Hz (resolution " << resolution_hz << " Hz)";
            throw DegenerateTransitions(msg.str());
        }
    }
    return table;
}

ValidationReport validate(const SpinSystem& sys, double resolution_hz) {
    ValidationReport report;
    auto add = [&report](const std::string& v) { report.violations.push_back(v); };

    if (sys.n_register < 1 || sys.n_register > 10)
        add("register size must be between 1 and 10 spins, got " + std::to_string(sys.n_register));
    const std::size_t spins = static_cast<std::size_t>(sys.spin_count());
    if (sys.offset_hz.size() != spins)
        add("offset list must have one entry per spin including the ancilla");
    bool coupling_shape_ok = sys.coupling_hz.size() == spins;
    for (const auto& row : sys.coupling_hz)
        coupling_shape_ok = coupling_shape_ok && row.size() == spins;
    if (!coupling_shape_ok) add("coupling matrix must be square over all spins");
    if (!(sys.t2_s > 0.0)) add("t2 must be positive");
    for (const auto& [bits, t2] : sys.t2_override_s)
        if (!(t2 > 0.0)) add("t2 override for " + format_bits(bits, sys.n_register) + " must be positive");

    if (!report.ok()) return report;

    for (std::size_t j = 0; j < spins; ++j) {
        if (sys.coupling_hz[j][j] != 0.0)
            add("coupling diagonal must be zero (spin " + std::to_string(j) + ")");
        for (std::size_t k = j + 1; k < spins; ++k)
            if (std::abs(sys.coupling_hz[j][k] - sys.coupling_hz[k][j]) > 1e-12)
                add("coupling matrix must be symmetric (spins " + std::to_string(j) + "," +
                    std::to_string(k) + ")");
    }
    for (int k = 1; k <= sys.n_register; ++k)
        if (std::abs(sys.coupling_hz[0][k]) < 1e-12)
            add("ancilla decoupled from spin " + std::to_string(k) +
                " (every register spin needs a J coupling to the ancilla)");

    if (!report.ok()) return report;

    try {
        TransitionTable table = transition_table(sys, resolution_hz);
        report.min_gap_hz = table.min_gap_hz();
    } catch (const DegenerateTransitions& e) {
        add(std::string("near-degenerate ") + e.what());
        TransitionTable table = transition_table(sys, -1.0);  // never throws
        report.min_gap_hz = table.min_gap_hz();
    }
    return report;
}

}  // namespace spinfetch
