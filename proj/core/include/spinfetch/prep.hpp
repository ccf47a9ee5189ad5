#pragma once

#include <variant>
#include <vector>

#include "spinfetch/operators.hpp"

namespace spinfetch {

/// Traceless deviation part of the ensemble density operator (standard NMR
/// bookkeeping: the identity component is unobservable). Operations that
/// need the full operator restore it as matrix + identity_offset * Id.
struct DeviationDensity {
    Eigen::MatrixXcd matrix;
    double identity_offset = 0.0;

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

struct Rotation {
    Axis axis = Axis::Y;
    double angle_rad = 0.0;
    std::vector<int> targets;
};

struct Delay {
    double duration_s = 0.0;
    bool couplings_active = true;
};

struct Gradient {};

using PulseEvent = std::variant<Rotation, Delay, Gradient>;

/// Thermal equilibrium deviation state sum_j I_jz; diagonal and traceless.
DeviationDensity thermal_state(const SpinSystem& sys);

/// Unitary conjugation rho' = R rho R+ with R = exp(-i angle F_axis).
DeviationDensity apply_pulse(const DeviationDensity& state, const Rotation& pulse,
                             const SpinSystem& sys);

/// Coherent evolution exp(-iHt) rho exp(+iHt); no relaxation is applied
/// during preparation delays. couplings=false evolves under offsets only.
DeviationDensity free_evolve(const DeviationDensity& state, double duration_s,
                             const SpinSystem& sys, bool couplings = true);

/// Ideal crusher: zeroes every element connecting states of unequal total
/// magnetic quantum number (coherence order p != 0); populations and
/// zero-quantum terms survive exactly.
DeviationDensity gradient_crush(const DeviationDensity& state);

/// Run a pulse/delay/gradient listing in time order.
DeviationDensity apply_sequence(const DeviationDensity& state,
                                const std::vector<PulseEvent>& events, const SpinSystem& sys);

/// The preparation listing: (pi/2)_y on spins 1..n, then a crusher.
std::vector<PulseEvent> preparation_sequence(const SpinSystem& sys);

/// Prepare the uniform-database state: thermal -> (pi/2)_y on the register
/// -> crush. The result is the embedded I_0z; identity_offset = 1/2 records
/// that the full state is the ancilla-alpha product spanning all register
/// values.
DeviationDensity prepare_I0alpha(const SpinSystem& sys);

struct SubEnsemble {
    double weight = 0.0;
    BasisState state;
};

/// Decompose a diagonal state (identity offset restored) into weighted basis
/// states; entries with zero weight are dropped. Throws NotDiagonal if any
/// off-diagonal element exceeds `tol`.
std::vector<SubEnsemble> sub_ensembles(const DeviationDensity& state, const SpinSystem& sys,
                                       double tol = 1e-10);

}  // namespace spinfetch
