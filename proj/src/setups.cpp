#include "qgem/setups.hpp"

#include <cmath>
#include <cstdio>

namespace qgem {

namespace {

// First basis index carrying each distinct phase, per setup.
constexpr int kDistinctIndex[3][4] = {
    {0, 1, 2, -1},  // parallel
    {0, 1, 2, 4},   // linear
    {0, 7, 1, 3},   // star
};

// 1-based distinct-phase slot of each basis index, per setup.
constexpr int kGroupOf[3][8] = {
    {1, 2, 3, 2, 2, 3, 2, 1},  // parallel
    {1, 2, 3, 2, 4, 3, 4, 1},  // linear
    {1, 3, 3, 4, 3, 4, 4, 2},  // star
};

int setup_row(SetupKind setup) { return static_cast<int>(setup); }

double phase_prefactor(const PhysicalParams& p) {
  return kGravitationalConstant * p.mass_kg * p.mass_kg * p.tau_s / kHbar;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be finite");
  }
}

// Error policy shared by the pairwise and closed-form routes: a branch pair
// at distance zero is always fatal; a negative distance is admitted into the
// sums only in unphysical mode.
void check_distance(double r, bool unphysical_mode) {
  if (r == 0.0) {
    throw DegenerateGeometry("two superposition branches coincide (pair distance 0)");
  }
  if (r < 0.0 && !unphysical_mode) {
    throw UnphysicalGeometry("branch ordering inverted: pair distance " +
                             std::to_string(r) + " m (enable unphysical mode to admit)");
  }
}

std::string format_length(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

const char* to_string(SetupKind setup) {
  switch (setup) {
    case SetupKind::Parallel: return "parallel";
    case SetupKind::Linear: return "linear";
    case SetupKind::Star: return "star";
  }
  return "?";
}

std::optional<SetupKind> setup_from_string(std::string_view name) {
  if (name == "parallel") return SetupKind::Parallel;
  if (name == "linear") return SetupKind::Linear;
  if (name == "star") return SetupKind::Star;
  return std::nullopt;
}

double PhysicalParams::separation(SetupKind setup) const {
  if (separation_override_m) return *separation_override_m;
  return setup == SetupKind::Linear ? d_min_m + width_m : d_min_m;
}

void PhysicalParams::validate() const {
  require_finite(mass_kg, "mass");
  require_finite(d_min_m, "d_min");
  require_finite(width_m, "width");
  require_finite(tau_s, "tau");
  require_finite(gamma_hz, "gamma");
  if (mass_kg <= 0.0) throw InvalidParameter("mass must be positive");
  if (d_min_m <= 0.0) throw InvalidParameter("d_min must be positive");
  if (width_m <= 0.0) throw InvalidParameter("width must be positive");
  if (tau_s < 0.0) throw InvalidParameter("tau must be non-negative");
  if (gamma_hz < 0.0) throw InvalidParameter("gamma must be non-negative");
  if (separation_override_m) {
    require_finite(*separation_override_m, "separation override");
    if (*separation_override_m <= 0.0) {
      throw InvalidParameter("separation override must be positive");
    }
  }
}

int basis_bit(BasisIndex idx, int qubit) {
  if (idx < 0 || idx > 7) {
    throw InvalidParameter("basis index must be in [0, 7], got " + std::to_string(idx));
  }
  if (qubit < 1 || qubit > 3) {
    throw InvalidParameter("qubit must be 1, 2 or 3, got " + std::to_string(qubit));
  }
  return (idx >> (3 - qubit)) & 1;
}

PhaseSet PhaseSet::from_deltas(SetupKind setup, double dphi2, double dphi3,
                               double dphi4) {
  require_finite(dphi2, "dphi2");
  require_finite(dphi3, "dphi3");
  require_finite(dphi4, "dphi4");
  const double distinct[4] = {0.0, dphi2, dphi3, dphi4};
  PhaseSet out;
  out.setup = setup;
  for (int idx = 0; idx < 8; ++idx) {
    out.phases[idx] = distinct[kGroupOf[setup_row(setup)][idx] - 1];
  }
  return out;
}

int PhaseSet::distinct_count() const {
  return setup == SetupKind::Parallel ? 3 : 4;
}

double PhaseSet::distinct_phase(int k) const {
  if (k < 1 || k > distinct_count()) {
    throw InvalidParameter("distinct phase index must be in [1, " +
                           std::to_string(distinct_count()) + "], got " +
                           std::to_string(k));
  }
  return phases[kDistinctIndex[setup_row(setup)][k - 1]];
}

double PhaseSet::delta_phase(int k) const {
  return distinct_phase(k) - distinct_phase(1);
}

std::complex<double> PhaseSet::phase_factor(int k) const {
  return std::polar(1.0, delta_phase(k));
}

void PhaseSet::check_degeneracy(double tol) const {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw InvalidTolerance("degeneracy tolerance must be positive and finite");
  }
  const int row = setup_row(setup);
  for (int idx = 0; idx < 8; ++idx) {
    const int rep = kDistinctIndex[row][kGroupOf[row][idx] - 1];
    const double diff = std::abs(phases[idx] - phases[rep]);
    if (diff > std::max(tol, tol * std::abs(phases[rep]))) {
      throw DegeneracyViolation(
          std::string("phase array violates the ") + to_string(setup) +
          " degeneracy pattern: phase[" + std::to_string(idx) + "] = " +
          std::to_string(phases[idx]) + " but phase[" + std::to_string(rep) +
          "] = " + std::to_string(phases[rep]));
    }
  }
}

double star_radius(const PhysicalParams& params) {
  params.validate();
  const double d = params.separation(SetupKind::Star);
  const double l = params.width_m;
  return std::sqrt(d * d + std::sqrt(3.0) * d * l + l * l) - d;
}

double instance_distance(SetupKind setup, const PhysicalParams& params,
                         int qubit_i, int bit_i, int qubit_k, int bit_k) {
  if (qubit_i < 1 || qubit_k > 3 || qubit_i >= qubit_k) {
    throw InvalidParameter("instance_distance expects 1 <= qubit_i < qubit_k <= 3");
  }
  if ((bit_i != 0 && bit_i != 1) || (bit_k != 0 && bit_k != 1)) {
    throw InvalidParameter("branch bits must be 0 or 1");
  }
  const double d = params.separation(setup);
  const double l = params.width_m;
  const int span = qubit_k - qubit_i;
  switch (setup) {
    case SetupKind::Parallel:
      return std::hypot(d * span, l * (bit_i - bit_k));
    case SetupKind::Linear:
      return span * d + l * (bit_k - bit_i);
    case SetupKind::Star:
      if (bit_i == 0 && bit_k == 0) return d;
      if (bit_i == 1 && bit_k == 1) return d + std::sqrt(3.0) * l;
      return d + star_radius(params);
  }
  return 0.0;
}

double pairwise_phase(SetupKind setup, const PhysicalParams& params,
                      BasisIndex idx, bool unphysical_mode) {
  params.validate();
  if (idx < 0 || idx > 7) {
    throw InvalidParameter("basis index must be in [0, 7], got " + std::to_string(idx));
  }
  double inv_sum = 0.0;
  for (int i = 1; i <= 3; ++i) {
    for (int k = i + 1; k <= 3; ++k) {
      const double r = instance_distance(setup, params, i, basis_bit(idx, i), k,
                                         basis_bit(idx, k));
      check_distance(r, unphysical_mode);
      inv_sum += 1.0 / r;
    }
  }
  return phase_prefactor(params) * inv_sum;
}

PhaseSet pairwise_phases(SetupKind setup, const PhysicalParams& params,
                         bool unphysical_mode) {
  PhaseSet out;
  out.setup = setup;
  for (int idx = 0; idx < 8; ++idx) {
    out.phases[idx] = pairwise_phase(setup, params, idx, unphysical_mode);
  }
  return out;
}

PhaseSet closed_form_phases(SetupKind setup, const PhysicalParams& params,
                            bool unphysical_mode) {
  params.validate();
  const double d = params.separation(setup);
  const double l = params.width_m;
  const double pref = phase_prefactor(params);
  double distinct[4] = {0.0, 0.0, 0.0, 0.0};
  switch (setup) {
    case SetupKind::Parallel: {
      const double diag1 = std::sqrt(d * d + l * l);
      const double diag2 = std::sqrt(4.0 * d * d + l * l);
      distinct[0] = pref * (5.0 / (2.0 * d));
      distinct[1] = pref * (1.0 / d + 1.0 / diag2 + 1.0 / diag1);
      distinct[2] = pref * (1.0 / (2.0 * d) + 2.0 / diag1);
      break;
    }
    case SetupKind::Linear: {
      check_distance(d - l, unphysical_mode);
      check_distance(2.0 * d - l, unphysical_mode);
      distinct[0] = pref * (5.0 / (2.0 * d));
      distinct[1] = pref * (1.0 / d + 1.0 / (d + l) + 1.0 / (2.0 * d + l));
      distinct[2] = pref * (1.0 / (2.0 * d) + 1.0 / (d + l) + 1.0 / (d - l));
      distinct[3] = pref * (1.0 / d + 1.0 / (d - l) + 1.0 / (2.0 * d - l));
      break;
    }
    case SetupKind::Star: {
      const double outer = d + std::sqrt(3.0) * l;
      const double mixed = d + star_radius(params);
      distinct[0] = pref * (3.0 / d);
      distinct[1] = pref * (3.0 / outer);
      distinct[2] = pref * (1.0 / d + 2.0 / mixed);
      distinct[3] = pref * (1.0 / outer + 2.0 / mixed);
      break;
    }
  }
  PhaseSet out;
  out.setup = setup;
  for (int idx = 0; idx < 8; ++idx) {
    out.phases[idx] = distinct[kGroupOf[setup_row(setup)][idx] - 1];
  }
  return out;
}

std::string GeometryViolation::describe() const {
  return "qubit " + std::to_string(qubit_i) + " branch " + std::to_string(bit_i) +
         " vs qubit " + std::to_string(qubit_k) + " branch " + std::to_string(bit_k) +
         ": distance " + format_length(distance_m) + " m";
}

std::vector<GeometryViolation> validate_geometry(SetupKind setup,
                                                 const PhysicalParams& params) {
  params.validate();
  std::vector<GeometryViolation> out;
  const double floor = params.d_min_m * (1.0 - 1e-9);
  for (int i = 1; i <= 3; ++i) {
    for (int k = i + 1; k <= 3; ++k) {
      for (int bi = 0; bi < 2; ++bi) {
        for (int bk = 0; bk < 2; ++bk) {
          const double r = instance_distance(setup, params, i, bi, k, bk);
          if (r < floor) {
            out.push_back({i, bi, k, bk, r});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace qgem
