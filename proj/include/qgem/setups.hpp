#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgem/errors.hpp"

namespace qgem {

inline constexpr double kGravitationalConstant = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double kHbar = 1.054571817e-34;               // J s

/// Geometric arrangement of the three interferometers.
enum class SetupKind { Parallel, Linear, Star };

const char* to_string(SetupKind setup);
std::optional<SetupKind> setup_from_string(std::string_view name);

/// Masses, lengths and times defining one experimental configuration.
///
/// The base separation d between adjacent interferometer centers is derived:
/// d = d_min for parallel and star, d = d_min + l for the linear chain, so
/// that the closest approach between any two branches is exactly d_min.
/// `separation_override_m`, when set, replaces the derived d; it exists for
/// geometry diagnostics and is not reachable from the command line.
struct PhysicalParams {
  double mass_kg = 1e-14;
  double d_min_m = 35e-6;
  double width_m = 10e-6;  // superposition width l
  double tau_s = 2.5;
  double gamma_hz = 0.0;
  std::optional<double> separation_override_m;

  double separation(SetupKind setup) const;

  /// Throws InvalidParameter naming the first offending field.
  /// Requires mass, d_min, width positive; tau, gamma non-negative; all finite.
  void validate() const;
};

/// Basis index 0..7 encoding |j1 j2 j3>, j1 the most significant bit.
using BasisIndex = int;

/// Bit of `idx` belonging to qubit 1, 2 or 3.
int basis_bit(BasisIndex idx, int qubit);

/// The eight accumulated gravitational phases of one setup, in radians.
///
/// Each setup forces equalities among the eight entries; the distinct values
/// number three (parallel) or four (linear, star) and are exposed 1-based in
/// the order phi_1, phi_2, ... of that setup's closed forms.
struct PhaseSet {
  SetupKind setup = SetupKind::Parallel;
  std::array<double, 8> phases{};

  /// Builds the array from phase differences relative to phi_1 (dphi_k =
  /// phi_k - phi_1), placing phi_1 = 0. dphi4 is ignored for parallel.
  static PhaseSet from_deltas(SetupKind setup, double dphi2, double dphi3,
                              double dphi4 = 0.0);

  int distinct_count() const;            // 3 or 4
  double distinct_phase(int k) const;    // k is 1-based
  double delta_phase(int k) const;       // distinct_phase(k) - distinct_phase(1)
  std::complex<double> phase_factor(int k) const;  // exp(i * delta_phase(k))

  /// Verifies the degeneracy pattern of `setup` within
  /// max(tol, tol * |phase|), throwing DegeneracyViolation otherwise.
  void check_degeneracy(double tol = 1e-12) const;
};

/// Displacement radius R = sqrt(d^2 + sqrt(3) d l + l^2) - d of the star
/// geometry's mixed-branch pairs.
double star_radius(const PhysicalParams& params);

/// Distance between branch `bit_i` of qubit `qubit_i` and branch `bit_k` of
/// qubit `qubit_k` (qubit_i < qubit_k). Signed for the linear chain, where
/// large widths can push branches past each other.
double instance_distance(SetupKind setup, const PhysicalParams& params,
                         int qubit_i, int bit_i, int qubit_k, int bit_k);

/// Phase of one basis branch: (G m^2 tau / hbar) * sum over pairs of 1/r.
///
/// A zero pair distance throws DegenerateGeometry. A negative one throws
/// UnphysicalGeometry unless `unphysical_mode`, which admits the signed
/// distance into the sum.
double pairwise_phase(SetupKind setup, const PhysicalParams& params,
                      BasisIndex idx, bool unphysical_mode = false);

/// All eight phases via pairwise summation.
PhaseSet pairwise_phases(SetupKind setup, const PhysicalParams& params,
                         bool unphysical_mode = false);

/// All eight phases via the per-setup closed forms. Agrees with
/// pairwise_phases entrywise to 1e-12 relative; same error policy.
PhaseSet closed_form_phases(SetupKind setup, const PhysicalParams& params,
                            bool unphysical_mode = false);

/// One pair of branches closer than d_min.
struct GeometryViolation {
  int qubit_i = 0;
  int bit_i = 0;
  int qubit_k = 0;
  int bit_k = 0;
  double distance_m = 0.0;

  std::string describe() const;
};

/// Checks every branch pair against the d_min floor; empty result means the
/// configuration is geometrically admissible.
std::vector<GeometryViolation> validate_geometry(SetupKind setup,
                                                 const PhysicalParams& params);

}  // namespace qgem
