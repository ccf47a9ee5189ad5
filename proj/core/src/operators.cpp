#include "spinfetch/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace spinfetch {

namespace {

constexpr Complex kImag{0.0, 1.0};

Operator kron_chain(const std::vector<Eigen::Matrix2cd>& factors) {
    Operator out = Operator::Identity(1, 1);
    for (const auto& f : factors) out = Eigen::kroneckerProduct(out, f).eval();
    return out;
}

Operator embed2(const Eigen::Matrix2cd& op, int spin, const SpinSystem& sys) {
    if (spin < 0 || spin > sys.n_register)
        throw std::out_of_range("spin index " + std::to_string(spin) + " out of range 0.." +
                                std::to_string(sys.n_register));
    std::vector<Eigen::Matrix2cd> factors(static_cast<std::size_t>(sys.spin_count()),
                                          Eigen::Matrix2cd::Identity());
    factors[static_cast<std::size_t>(spin)] = op;
    return kron_chain(factors);
}

Eigen::Matrix2cd axis_sigma(Axis axis) {
    // The Pauli matrix of the rotation axis (2 * I_axis), sign included.
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (axis) {
        case Axis::X:      m << 0, 1, 1, 0; break;
        case Axis::MinusX: m << 0, -1, -1, 0; break;
        case Axis::Y:      m << 0, -kImag, kImag, 0; break;
        case Axis::MinusY: m << 0, kImag, -kImag, 0; break;
        case Axis::Z:      m << 1, 0, 0, -1; break;
        case Axis::MinusZ: m << -1, 0, 0, 1; break;
    }
    return m;
}

}  // namespace

Eigen::Matrix2cd single_spin_matrix(SpinOp kind) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (kind) {
        case SpinOp::Ialpha:   m << 1, 0, 0, 0; break;
        case SpinOp::Ibeta:    m << 0, 0, 0, 1; break;
        case SpinOp::Ix:       m << 0, 0.5, 0.5, 0; break;
        case SpinOp::Iy:       m << 0, -0.5 * kImag, 0.5 * kImag, 0; break;
        case SpinOp::Iz:       m << 0.5, 0, 0, -0.5; break;
        case SpinOp::Identity: m = Eigen::Matrix2cd::Identity(); break;
    }
    return m;
}

Operator embed_single_spin(SpinOp kind, int spin, const SpinSystem& sys) {
    return embed2(single_spin_matrix(kind), spin, sys);
}

Operator product_state(const std::vector<SpinOp>& pattern) {
    if (pattern.empty()) throw std::invalid_argument("product_state: empty pattern");
    std::vector<Eigen::Matrix2cd> factors;
    factors.reserve(pattern.size());
    for (SpinOp op : pattern) {
        if (op != SpinOp::Ialpha && op != SpinOp::Ibeta && op != SpinOp::Identity)
            throw std::invalid_argument("product_state: factors must be Ialpha/Ibeta/Identity");
        factors.push_back(single_spin_matrix(op));
    }
    return kron_chain(factors);
}

namespace {

void require_distinct(const std::vector<int>& spins, const char* where) {
    for (std::size_t i = 0; i < spins.size(); ++i)
        for (std::size_t j = i + 1; j < spins.size(); ++j)
            if (spins[i] == spins[j])
                throw std::invalid_argument(std::string(where) + ": spin " +
                                            std::to_string(spins[i]) + " listed twice");
}

}  // namespace

Operator collective(Collective kind, const std::vector<int>& spins, const SpinSystem& sys) {
    if (spins.empty()) throw std::invalid_argument("collective: empty spin subset");
    require_distinct(spins, "collective");
    Eigen::Matrix2cd raising;
    raising << 0, 1, 0, 0;  // Ix + i*Iy
    Operator sum = Operator::Zero(static_cast<Eigen::Index>(sys.dim()),
                                  static_cast<Eigen::Index>(sys.dim()));
    for (int spin : spins) {
        switch (kind) {
            case Collective::Fy: sum += embed_single_spin(SpinOp::Iy, spin, sys); break;
            case Collective::Fplus: sum += embed2(raising, spin, sys); break;
        }
    }
    return sum;
}

Operator build_hamiltonian(const SpinSystem& sys) {
    const auto dim = static_cast<Eigen::Index>(sys.dim());
    Operator h = Operator::Zero(dim, dim);
    for (int j = 0; j < sys.spin_count(); ++j) {
        const double omega = 2.0 * std::numbers::pi * sys.offset_hz[j];
        h += omega * embed_single_spin(SpinOp::Iz, j, sys);
        for (int k = j + 1; k < sys.spin_count(); ++k) {
            const double two_pi_j = 2.0 * std::numbers::pi * sys.coupling_hz[j][k];
            if (two_pi_j == 0.0) continue;
            h += two_pi_j *
                 (embed_single_spin(SpinOp::Iz, j, sys) * embed_single_spin(SpinOp::Iz, k, sys));
        }
    }
    return h;
}

std::vector<double> energy_levels(const SpinSystem& sys, bool couplings) {
    SpinSystem zeeman;
    const SpinSystem* src = &sys;
    if (!couplings) {
        zeeman = sys;
        for (auto& row : zeeman.coupling_hz) std::fill(row.begin(), row.end(), 0.0);
        src = &zeeman;
    }
    std::vector<double> levels(src->dim());
    for (std::size_t b = 0; b < levels.size(); ++b)
        levels[b] = eigen_energy(*src, BasisState::from_index(b, src->n_register));
    return levels;
}

Operator rotation(Axis axis, double angle_rad, const std::vector<int>& targets,
                  const SpinSystem& sys) {
    if (targets.empty()) throw std::invalid_argument("rotation: empty target set");
    require_distinct(targets, "rotation");
    if (!std::isfinite(angle_rad)) throw std::invalid_argument("rotation: angle must be finite");
    // exp(-i a I_axis) = cos(a/2) Id - i sin(a/2) sigma_axis, per spin.
    const Eigen::Matrix2cd factor = std::cos(angle_rad / 2) * Eigen::Matrix2cd::Identity() -
                                    kImag * std::sin(angle_rad / 2) * axis_sigma(axis);
    std::vector<Eigen::Matrix2cd> factors(static_cast<std::size_t>(sys.spin_count()),
                                          Eigen::Matrix2cd::Identity());
    for (int spin : targets) {
        if (spin < 0 || spin > sys.n_register)
            throw std::out_of_range("rotation: spin index " + std::to_string(spin) +
                                    " out of range");
        factors[static_cast<std::size_t>(spin)] = factor;
    }
    return kron_chain(factors);
}

}  // namespace spinfetch
