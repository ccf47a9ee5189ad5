#include "spinfetch/prep.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinfetch/errors.hpp"

namespace spinfetch {

DeviationDensity thermal_state(const SpinSystem& sys) {
    const auto dim = static_cast<Eigen::Index>(sys.dim());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int ups = sys.spin_count() - std::popcount(static_cast<std::uint64_t>(b));
        const int downs = std::popcount(static_cast<std::uint64_t>(b));
        rho(b, b) = 0.5 * (ups - downs);
    }
    return {rho, 0.0};
}

DeviationDensity apply_pulse(const DeviationDensity& state, const Rotation& pulse,
                             const SpinSystem& sys) {
    const Operator r = rotation(pulse.axis, pulse.angle_rad, pulse.targets, sys);
    return {r * state.matrix * r.adjoint(), state.identity_offset};
}

DeviationDensity free_evolve(const DeviationDensity& state, double duration_s,
                             const SpinSystem& sys, bool couplings) {
    if (duration_s < 0.0) throw std::invalid_argument("free_evolve: negative duration");
    if (duration_s == 0.0) return state;
    const std::vector<double> levels = energy_levels(sys, couplings);
    const auto dim = static_cast<Eigen::Index>(levels.size());
    Eigen::MatrixXcd rho(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index s = 0; s < dim; ++s) {
            const double phase = -(levels[static_cast<std::size_t>(r)] -
                                   levels[static_cast<std::size_t>(s)]) * duration_s;
            rho(r, s) = state.matrix(r, s) * std::polar(1.0, phase);
        }
    return {rho, state.identity_offset};
}

DeviationDensity gradient_crush(const DeviationDensity& state) {
    Eigen::MatrixXcd rho = state.matrix;
    const auto dim = rho.rows();
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index s = 0; s < dim; ++s)
            if (std::popcount(static_cast<std::uint64_t>(r)) !=
                std::popcount(static_cast<std::uint64_t>(s)))
                rho(r, s) = 0.0;
    return {rho, state.identity_offset};
}

DeviationDensity apply_sequence(const DeviationDensity& state,
                                const std::vector<PulseEvent>& events, const SpinSystem& sys) {
    DeviationDensity current = state;
    for (const PulseEvent& event : events) {
        if (const auto* pulse = std::get_if<Rotation>(&event)) {
            current = apply_pulse(current, *pulse, sys);
        } else if (const auto* delay = std::get_if<Delay>(&event)) {
            current = free_evolve(current, delay->duration_s, sys, delay->couplings_active);
        } else {
            current = gradient_crush(current);
        }
    }
    return current;
}

std::vector<PulseEvent> preparation_sequence(const SpinSystem& sys) {
    std::vector<int> register_spins;
    for (int k = 1; k <= sys.n_register; ++k) register_spins.push_back(k);
    std::vector<PulseEvent> events;
    if (!register_spins.empty())
        events.push_back(Rotation{Axis::Y, std::numbers::pi / 2, register_spins});
    events.push_back(Gradient{});
    return events;
}

DeviationDensity prepare_I0alpha(const SpinSystem& sys) {
    DeviationDensity state = apply_sequence(thermal_state(sys), preparation_sequence(sys), sys);
    // What survives the crusher is exactly the embedded I_0z, the traceless
    // part of the ancilla-alpha product state.
    state.identity_offset = 0.5;
    return state;
}

std::vector<SubEnsemble> sub_ensembles(const DeviationDensity& state, const SpinSystem& sys,
                                       double tol) {
    if (state.dim() != sys.dim())
        throw Error("state dimension " + std::to_string(state.dim()) +
                    " does not match the system dimension " + std::to_string(sys.dim()));
    const auto dim = state.matrix.rows();
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index s = 0; s < dim; ++s)
            if (r != s && std::abs(state.matrix(r, s)) > tol)
                throw NotDiagonal("sub_ensembles: off-diagonal element at (" + std::to_string(r) +
                                  "," + std::to_string(s) + ") has magnitude " +
                                  std::to_string(std::abs(state.matrix(r, s))));
    std::vector<SubEnsemble> subs;
    for (Eigen::Index b = 0; b < dim; ++b) {
        const double weight = state.matrix(b, b).real() + state.identity_offset;
        if (std::abs(weight) <= 1e-12) continue;
        subs.push_back({weight, BasisState::from_index(static_cast<std::size_t>(b), sys.n_register)});
    }
    return subs;
}

}  // namespace spinfetch
