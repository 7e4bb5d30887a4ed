#include "qgem/states.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qgem {

namespace {

const double kEqualAmplitude = 1.0 / std::sqrt(8.0);

void require_finite_phases(const PhaseSet& phases) {
  for (double p : phases.phases) {
    if (!std::isfinite(p)) {
      throw InvalidParameter("phase array has non-finite entries");
    }
  }
}

}  // namespace

double PureState::norm_sq() const {
  double acc = 0.0;
  for (const Complex& a : amplitudes) acc += std::norm(a);
  return acc;
}

void PureState::require_normalized(double tol) const {
  const double n = norm_sq();
  if (!(std::abs(n - 1.0) <= tol)) {
    throw NotNormalized("state norm^2 = " + std::to_string(n));
  }
}

PureState initial_state() {
  PureState out;
  out.amplitudes.fill(Complex{kEqualAmplitude, 0.0});
  return out;
}

PureState evolved_state(const PhaseSet& phases) {
  require_finite_phases(phases);
  PureState out;
  for (int i = 0; i < 8; ++i) {
    out.amplitudes[i] = std::polar(kEqualAmplitude, phases.phases[i]);
  }
  return out;
}

DensityMatrix pure_density(const PureState& state) {
  state.require_normalized(1e-9);
  DensityMatrix rho;
  rho.entries.resize(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      rho.entries(i, j) = state.amplitudes[i] * std::conj(state.amplitudes[j]);
    }
  }
  return rho;
}

int hamming_delta(BasisIndex i, BasisIndex j) {
  if (i < 0 || i > 7 || j < 0 || j > 7) {
    throw InvalidParameter("basis indices must be in [0, 7]");
  }
  return std::popcount(static_cast<unsigned>(i ^ j));
}

DensityMatrix decohered_state(const PhaseSet& phases, double gamma_hz,
                              double tau_s) {
  require_finite_phases(phases);
  if (!std::isfinite(gamma_hz) || gamma_hz < 0.0) {
    throw InvalidParameter("gamma must be finite and non-negative");
  }
  if (!std::isfinite(tau_s) || tau_s < 0.0) {
    throw InvalidParameter("tau must be finite and non-negative");
  }
  DensityMatrix rho;
  rho.entries.resize(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double damping = std::exp(-hamming_delta(i, j) * gamma_hz * tau_s);
      rho.entries(i, j) =
          0.125 * damping * std::polar(1.0, phases.phases[i] - phases.phases[j]);
    }
  }
  rho.origin = phases;
  rho.channel = std::make_pair(gamma_hz, tau_s);
  return rho;
}

}  // namespace qgem
