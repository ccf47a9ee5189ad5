#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "spinfetch/spin_system.hpp"

namespace spinfetch {

using Operator = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class SpinOp { Ialpha, Ibeta, Ix, Iy, Iz, Identity };
enum class Collective { Fy, Fplus };
enum class Axis { X, Y, Z, MinusX, MinusY, MinusZ };

Eigen::Matrix2cd single_spin_matrix(SpinOp kind);

/// Kronecker embedding of the named 2x2 operator at position `spin`
/// (identity on all other spins). Result dimension 2^(n_register+1).
Operator embed_single_spin(SpinOp kind, int spin, const SpinSystem& sys);

/// Kronecker product of per-spin Ialpha/Ibeta/Identity factors; pattern[0]
/// is the ancilla. Diagonal with entries in {0,1}.
Operator product_state(const std::vector<SpinOp>& pattern);

/// Sum of embedded single-spin operators over `spins`: Fy or the raising
/// combination F+ = Fx + i*Fy.
Operator collective(Collective kind, const std::vector<int>& spins, const SpinSystem& sys);

/// Weak-coupling Hamiltonian in rad/s, assembled from embedded operators:
///   sum_j w_j I_jz + sum_{j<k} 2 pi J_jk I_jz I_kz.
/// Diagonal in the computational basis.
Operator build_hamiltonian(const SpinSystem& sys);

/// Diagonal of the Hamiltonian by closed form, one entry per basis state.
/// couplings=false drops the J terms (offset-only evolution).
std::vector<double> energy_levels(const SpinSystem& sys, bool couplings = true);

/// Exact rotation exp(-i * angle * F_axis(targets)) composed from per-spin
/// 2x2 factors; axis MinusX/... rotates about the negated axis.
Operator rotation(Axis axis, double angle_rad, const std::vector<int>& targets,
                  const SpinSystem& sys);

}  // namespace spinfetch
