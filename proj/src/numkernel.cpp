#include "qgem/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgem/states.hpp"

namespace qgem {

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidMatrix("hermitian_eigenvalues: matrix must be square and non-empty, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw InvalidMatrix("hermitian_eigenvalues: matrix has non-finite entries");
  }
  const double asymmetry = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-10) {
    throw NotHermitian("hermitian_eigenvalues: |M - M^dagger| reaches " +
                       std::to_string(asymmetry));
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalConsistency("hermitian_eigenvalues: eigensolver failed to converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

ComplexMatrix reduced_density(const PureState& state, int kept_qubit) {
  if (kept_qubit < 1 || kept_qubit > 3) {
    throw DimensionMismatch("reduced_density: kept_qubit must be 1, 2 or 3, got " +
                            std::to_string(kept_qubit));
  }
  state.require_normalized(1e-9);
  const int shift = 3 - kept_qubit;  // bit position of the kept qubit
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int rest = 0; rest < 8; ++rest) {
    if ((rest >> shift) & 1) continue;  // enumerate indices with kept bit = 0
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const int ia = rest | (a << shift);
        const int ib = rest | (b << shift);
        out(a, b) += state.amplitudes[ia] * std::conj(state.amplitudes[ib]);
      }
    }
  }
  return out;
}

double expectation_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.entries.rows() != 8 || rho.entries.cols() != 8) {
    throw DimensionMismatch("expectation_pure: density matrix must be 8x8, got " +
                            std::to_string(rho.entries.rows()) + "x" +
                            std::to_string(rho.entries.cols()));
  }
  psi.require_normalized(1e-9);
  Complex acc{0.0, 0.0};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      acc += std::conj(psi.amplitudes[i]) * rho.entries(i, j) * psi.amplitudes[j];
    }
  }
  if (std::abs(acc.imag()) > 1e-12) {
    throw NumericalConsistency("expectation_pure: imaginary residue " +
                               std::to_string(acc.imag()));
  }
  const double value = acc.real();
  if (value < -1e-10 || value > 1.0 + 1e-10) {
    throw NumericalConsistency("expectation_pure: value " + std::to_string(value) +
                               " outside [0, 1]");
  }
  return std::clamp(value, -1e-12, 1.0 + 1e-12);
}

}  // namespace qgem
