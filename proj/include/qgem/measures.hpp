#pragma once

#include <optional>

#include "qgem/states.hpp"

namespace qgem {

/// One-vs-rest split of the three qubits.
enum class Bipartition { A_BC, B_AC, C_AB };

const char* to_string(Bipartition part);

/// The qubit (1, 2 or 3) transposed by `part`.
int transposed_qubit(Bipartition part);

/// Partial transpose of an 8x8 density matrix over one qubit.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Bipartition part);

/// Negativity across one bipartition: -2 times the sum of the partial
/// transpose's eigenvalues at or below -1e-12. Zero when no eigenvalue
/// clears the cutoff.
double negativity(const DensityMatrix& rho, Bipartition part);

/// Geometric mean of the three bipartition negativities; exactly zero when
/// any factor vanishes.
double tripartite_negativity(const DensityMatrix& rho);

/// Residual three-way entanglement of a pure state, 4 |d1 - 2 d2 + 4 d3|
/// over the standard degree-4 amplitude invariants. Range [0, 1]; overshoot
/// beyond 1 + 1e-10 throws NumericalConsistency.
double three_tangle_pure(const PureState& state);

/// Same quantity from a setup's phase array alone, via the per-setup
/// polynomial in the phase factors. Verifies the degeneracy pattern first
/// (DegeneracyViolation on mismatch).
double three_tangle_closed(SetupKind setup, const PhaseSet& phases);

/// Largest single-qubit reduced eigenvalue, maximized over the three qubits.
/// Equals 1 exactly on product states, 1/2 on maximally entangled splits.
double chi(const PureState& state);

/// Entanglement witness result for one (state, reference) pair.
///
/// expectation = chi(reference) - <reference| rho |reference>; strictly
/// negative values certify genuine tripartite entanglement of rho.
struct WitnessReport {
  double chi = 0.0;
  double fidelity = 0.0;
  double expectation = 0.0;
  std::optional<PhaseSet> reference_phases;
};

WitnessReport witness_expectation(const DensityMatrix& rho,
                                  const PureState& reference);

/// Convenience overload: the reference is the noiseless evolved state of
/// `reference_phases`, which is echoed in the report.
WitnessReport witness_expectation(const DensityMatrix& rho,
                                  const PhaseSet& reference_phases);

}  // namespace qgem
