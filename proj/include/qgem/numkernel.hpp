#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qgem/errors.hpp"

namespace qgem {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct PureState;
struct DensityMatrix;

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Rejects empty, non-square, or non-finite input (InvalidMatrix) and input
/// whose max entrywise deviation from its adjoint exceeds 1e-10 (NotHermitian).
/// Smaller asymmetry is symmetrized away as (M + M^dagger)/2 before solving.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// 2x2 reduced density matrix of one qubit of a normalized three-qubit state,
/// tracing out the other two. `kept_qubit` is 1, 2 or 3 (1 = leftmost label).
ComplexMatrix reduced_density(const PureState& state, int kept_qubit);

/// <psi| rho |psi> as a real number.
///
/// The imaginary residue must stay below 1e-12 and the real part inside
/// [-1e-10, 1 + 1e-10]; both violations throw NumericalConsistency. The
/// returned value is clamped to [-1e-12, 1 + 1e-12].
double expectation_pure(const DensityMatrix& rho, const PureState& psi);

}  // namespace qgem
