#include "qgem/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qgem {

namespace {

// Clamp a value whose theoretical range is [0, 1]: tiny overshoot is rounded
// back to the boundary, anything past 1 + 1e-10 is a genuine failure.
double clamp_unit(double v, const char* label) {
  if (v > 1.0 + 1e-10) {
    throw NumericalConsistency(std::string(label) + " = " + std::to_string(v) +
                               " exceeds 1");
  }
  return std::min(v, 1.0);
}

Complex square(Complex z) { return z * z; }

}  // namespace

const char* to_string(Bipartition part) {
  switch (part) {
    case Bipartition::A_BC: return "A|BC";
    case Bipartition::B_AC: return "B|AC";
    case Bipartition::C_AB: return "C|AB";
  }
  return "?";
}

int transposed_qubit(Bipartition part) {
  switch (part) {
    case Bipartition::A_BC: return 1;
    case Bipartition::B_AC: return 2;
    case Bipartition::C_AB: return 3;
  }
  return 0;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Bipartition part) {
  if (rho.entries.rows() != 8 || rho.entries.cols() != 8) {
    throw DimensionMismatch("partial_transpose: density matrix must be 8x8");
  }
  const int mask = 4 >> (transposed_qubit(part) - 1);  // bit of the moved qubit
  ComplexMatrix out(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      out(i, j) = rho.entries((i & ~mask) | (j & mask), (j & ~mask) | (i & mask));
    }
  }
  return out;
}

double negativity(const DensityMatrix& rho, Bipartition part) {
  const std::vector<double> eigs = hermitian_eigenvalues(partial_transpose(rho, part));
  double negative_sum = 0.0;
  for (double ev : eigs) {
    if (ev <= -1e-12) negative_sum += ev;
  }
  return -2.0 * negative_sum;
}

double tripartite_negativity(const DensityMatrix& rho) {
  const double na = negativity(rho, Bipartition::A_BC);
  const double nb = negativity(rho, Bipartition::B_AC);
  const double nc = negativity(rho, Bipartition::C_AB);
  if (na == 0.0 || nb == 0.0 || nc == 0.0) return 0.0;
  return std::cbrt(na * nb * nc);
}

double three_tangle_pure(const PureState& state) {
  state.require_normalized(1e-9);
  const auto a = [&](int j1, int j2, int j3) {
    return state.amplitudes[(j1 << 2) | (j2 << 1) | j3];
  };
  const Complex d1 = square(a(0, 0, 0)) * square(a(1, 1, 1)) +
                     square(a(0, 0, 1)) * square(a(1, 1, 0)) +
                     square(a(0, 1, 0)) * square(a(1, 0, 1)) +
                     square(a(1, 0, 0)) * square(a(0, 1, 1));
  const Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                     a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                     a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                     a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                     a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                     a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  const Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                     a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  const double t = 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
  return clamp_unit(t, "three-tangle");
}

double three_tangle_closed(SetupKind setup, const PhaseSet& phases) {
  PhaseSet ph = phases;
  ph.setup = setup;
  ph.check_degeneracy();
  double t = 0.0;
  switch (setup) {
    case SetupKind::Parallel: {
      const Complex al = ph.phase_factor(2);
      const Complex be = ph.phase_factor(3);
      const Complex a2 = al * al;
      const Complex b2 = be * be;
      t = std::abs(1.0 + b2 * b2 - 2.0 * b2 - 4.0 * a2 + 8.0 * a2 * be -
                   4.0 * a2 * b2) / 16.0;
      break;
    }
    case SetupKind::Linear: {
      const Complex al = ph.phase_factor(2);
      const Complex be = ph.phase_factor(3);
      const Complex la = ph.phase_factor(4);
      const Complex b2 = be * be;
      const Complex axl = al * la;
      t = std::abs(1.0 + b2 * b2 - 2.0 * b2 - 4.0 * axl + 8.0 * axl * be -
                   4.0 * axl * b2) / 16.0;
      break;
    }
    case SetupKind::Star: {
      const Complex mu = ph.phase_factor(2);
      const Complex nu = ph.phase_factor(3);
      const Complex xi = ph.phase_factor(4);
      const Complex nx = nu * xi;
      t = std::abs(mu * mu - 3.0 * nx * nx - 6.0 * mu * nx + 4.0 * xi * xi * xi +
                   4.0 * mu * nu * nu * nu) / 16.0;
      break;
    }
  }
  return clamp_unit(t, "three-tangle");
}

double chi(const PureState& state) {
  double best = 0.0;
  for (int q = 1; q <= 3; ++q) {
    const ComplexMatrix r = reduced_density(state, q);
    // Largest eigenvalue of a 2x2 Hermitian matrix in the cancellation-free
    // form (a+d)/2 + sqrt(((a-d)/2)^2 + |b|^2).
    const double a = r(0, 0).real();
    const double d = r(1, 1).real();
    const double half_gap = 0.5 * (a - d);
    const double top = 0.5 * (a + d) + std::sqrt(half_gap * half_gap + std::norm(r(0, 1)));
    best = std::max(best, top);
  }
  return clamp_unit(best, "chi");
}

WitnessReport witness_expectation(const DensityMatrix& rho,
                                  const PureState& reference) {
  WitnessReport report;
  report.chi = chi(reference);
  report.fidelity = expectation_pure(rho, reference);
  report.expectation = report.chi - report.fidelity;
  return report;
}

WitnessReport witness_expectation(const DensityMatrix& rho,
                                  const PhaseSet& reference_phases) {
  WitnessReport report = witness_expectation(rho, evolved_state(reference_phases));
  report.reference_phases = reference_phases;
  return report;
}

}  // namespace qgem
