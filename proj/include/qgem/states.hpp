#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qgem/numkernel.hpp"
#include "qgem/setups.hpp"

namespace qgem {

/// Three-qubit pure state, amplitudes indexed by BasisIndex.
struct PureState {
  std::array<Complex, 8> amplitudes{};

  double norm_sq() const;

  /// Throws NotNormalized if |norm_sq - 1| > tol.
  void require_normalized(double tol = 1e-9) const;
};

/// 8x8 density matrix plus provenance of how it was produced.
struct DensityMatrix {
  ComplexMatrix entries;                                // 8x8
  std::optional<PhaseSet> origin;                       // generating phases
  std::optional<std::pair<double, double>> channel;     // (gamma_hz, tau_s)
};

/// Equal superposition of all eight branches, amplitude 1/(2 sqrt 2) each.
PureState initial_state();

/// Branch i picks up exp(i phi_i): the state after free gravitational
/// evolution, before any decoherence.
PureState evolved_state(const PhaseSet& phases);

/// |psi><psi| of a normalized state.
DensityMatrix pure_density(const PureState& state);

/// Number of bit positions where two basis indices differ.
int hamming_delta(BasisIndex i, BasisIndex j);

/// Dephased evolved state:
///   rho(i,j) = (1/8) exp(-delta(i,j) gamma tau) exp(i (phi_i - phi_j))
/// with delta the Hamming distance. Diagonal stays exactly 1/8; gamma = 0
/// reproduces the pure projector. Negative gamma or tau throws
/// InvalidParameter.
DensityMatrix decohered_state(const PhaseSet& phases, double gamma_hz,
                              double tau_s);

}  // namespace qgem
