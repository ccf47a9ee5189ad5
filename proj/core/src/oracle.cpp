#include "spinfetch/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "spinfetch/errors.hpp"

namespace spinfetch {

bool MarkedSet::contains(std::uint32_t x) const {
    return std::binary_search(items.begin(), items.end(), x);
}

MarkedSet MarkedSet::parse(const std::string& csv, int n_register) {
    MarkedSet set;
    set.n_register = n_register;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = token.find_last_not_of(" \t");
        token = token.substr(first, last - first + 1);
        if (static_cast<int>(token.size()) != n_register)
            throw Error("marked item '" + token + "' must have exactly " +
                        std::to_string(n_register) + " bits");
        set.items.push_back(parse_bits(token));
    }
    std::sort(set.items.begin(), set.items.end());
    set.items.erase(std::unique(set.items.begin(), set.items.end()), set.items.end());
    return set;
}

std::string MarkedSet::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += format_bits(items[i], n_register);
    }
    return out;
}

OracleUnitary compile_oracle(const SpinSystem& sys, const MarkedSet& marked) {
    if (marked.n_register != sys.n_register)
        throw Error("marked set is over " + std::to_string(marked.n_register) +
                    " bits but the register has " + std::to_string(sys.n_register));
    MarkedSet canonical = marked;  // sorted unique items, as contains() expects
    std::sort(canonical.items.begin(), canonical.items.end());
    canonical.items.erase(std::unique(canonical.items.begin(), canonical.items.end()),
                          canonical.items.end());
    const std::uint32_t half = 1u << sys.n_register;
    const auto dim = static_cast<Eigen::Index>(sys.dim());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (std::uint32_t x : canonical.items) {
        if (x >= half) throw Error("marked item exceeds the register range");
        const auto lo = static_cast<Eigen::Index>(x);
        const auto hi = static_cast<Eigen::Index>(half + x);
        u(lo, lo) = 0.0;
        u(hi, hi) = 0.0;
        u(lo, hi) = 1.0;
        u(hi, lo) = 1.0;
    }
    return {std::move(u), std::move(canonical)};
}

DeviationDensity apply_query(const DeviationDensity& state, const OracleUnitary& oracle) {
    if (oracle.matrix.rows() != state.matrix.rows())
        throw Error("apply_query: oracle dimension " + std::to_string(oracle.matrix.rows()) +
                    " does not match state dimension " + std::to_string(state.matrix.rows()));
    return {oracle.matrix * state.matrix * oracle.matrix.adjoint(), state.identity_offset};
}

namespace {

double query_trace(const Eigen::MatrixXcd& full_state, const OracleUnitary& oracle) {
    if (oracle.matrix.rows() != full_state.rows())
        throw Error("query_value: dimension mismatch");
    const int n = oracle.marked.n_register;
    // Tr{ U rho U+ I_0z } with I_0z diagonal (+1/2 ancilla alpha, -1/2 beta).
    const Eigen::MatrixXcd rotated = oracle.matrix * full_state * oracle.matrix.adjoint();
    const Eigen::Index half = Eigen::Index{1} << n;
    double value = 0.0;
    for (Eigen::Index b = 0; b < rotated.rows(); ++b)
        value += (b < half ? 0.5 : -0.5) * rotated(b, b).real();
    return value;
}

}  // namespace

double query_value(const Eigen::MatrixXcd& register_density, const OracleUnitary& oracle) {
    const Eigen::Index half = Eigen::Index{1} << oracle.marked.n_register;
    if (register_density.rows() != half || register_density.cols() != half)
        throw Error("query_value: register density must have dimension 2^n");
    Eigen::Matrix2cd alpha;
    alpha << 1, 0, 0, 0;
    const Eigen::MatrixXcd full = Eigen::kroneckerProduct(alpha, register_density).eval();
    return query_trace(full, oracle);
}

double query_value(const DeviationDensity& prepared, const OracleUnitary& oracle) {
    Eigen::MatrixXcd full = prepared.matrix;
    full += prepared.identity_offset * Eigen::MatrixXcd::Identity(full.rows(), full.cols());
    return query_trace(full, oracle);
}

double ensemble_query(const std::vector<SubEnsemble>& subs, const OracleUnitary& oracle) {
    const Eigen::Index half = Eigen::Index{1} << oracle.marked.n_register;
    double total = 0.0;
    for (const SubEnsemble& sub : subs) {
        if (sub.weight < 0.0) throw Error("ensemble_query: negative weight");
        Eigen::MatrixXcd item = Eigen::MatrixXcd::Zero(half, half);
        item(sub.state.register_bits, sub.state.register_bits) = 1.0;
        total += sub.weight * query_value(item, oracle);
    }
    return total;
}

Operator pulse_unitary(const std::vector<PulseEvent>& events, const SpinSystem& sys) {
    if (events.empty()) throw Error("pulse_unitary: empty sequence");
    const auto dim = static_cast<Eigen::Index>(sys.dim());
    Operator net = Operator::Identity(dim, dim);
    for (const PulseEvent& event : events) {
        if (std::holds_alternative<Gradient>(event))
            throw Error("pulse_unitary: gradient events have no unitary representation");
        Operator step;
        if (const auto* pulse = std::get_if<Rotation>(&event)) {
            step = rotation(pulse->axis, pulse->angle_rad, pulse->targets, sys);
        } else {
            const auto& delay = std::get<Delay>(event);
            if (delay.duration_s < 0.0) throw Error("pulse_unitary: negative delay");
            const std::vector<double> levels = energy_levels(sys, delay.couplings_active);
            step = Operator::Zero(dim, dim);
            for (Eigen::Index b = 0; b < dim; ++b)
                step(b, b) = std::polar(1.0, -levels[static_cast<std::size_t>(b)] * delay.duration_s);
        }
        net = step * net;  // listed order is time order
    }
    return net;
}

}  // namespace spinfetch
