#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgem/measures.hpp"

namespace qgem {

inline constexpr const char* kVersion = "0.1.0";

/// Scalar quantity evaluated at each sweep cell.
enum class Measure { NegA, NegB, NegC, TriNeg, Tangle, Chi, Witness };

const char* to_string(Measure m);
std::optional<Measure> measure_from_string(std::string_view name);

enum class SweepMode { Point, PhaseSurface, LGammaMap, TimeSeries, Threshold };

const char* to_string(SweepMode m);

/// One sampled axis. Lattice points are index-addressed and reproducible:
/// value_at(0) = min, value_at(steps - 1) = max exactly.
struct AxisSpec {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
  bool log_scale = false;

  double value_at(int i) const;
};

/// Direct phase differences, bypassing the physical geometry.
struct PhaseOverride {
  double dphi2 = 0.0;
  double dphi3 = 0.0;
  double dphi4 = 0.0;  // ignored for parallel
};

struct SweepSpec {
  SweepMode mode = SweepMode::Point;
  SetupKind setup = SetupKind::Parallel;
  std::vector<SetupKind> setups;  // time series may track several; empty = {setup}
  Measure measure = Measure::TriNeg;
  std::vector<AxisSpec> axes;
  PhysicalParams params;
  std::optional<PhaseOverride> phase_override;
  std::vector<double> gamma_values;  // time series columns; empty = {params.gamma_hz}
  bool unphysical_mode = false;
  int jobs = 1;

  /// Throws InvalidSpec on structural problems (axis counts, step counts,
  /// inverted or non-finite ranges, log axis crossing zero, jobs < 1).
  void validate() const;
};

/// Tabular sweep output: echoed metadata, the axes, named columns (axis
/// coordinates first), and one row of doubles per cell. NaN marks cells
/// skipped as unphysical.
struct SweepResult {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<AxisSpec> axes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// '#'-prefixed key=value metadata, a header line, then one comma-joined
  /// row per cell; 15 significant digits, NaN as an empty field.
  void write_csv(std::ostream& out) const;

  /// Single object {meta, axes, rows}; NaN serializes as null.
  void write_json(std::ostream& out) const;
};

/// The configuration-echo metadata pairs carried by every sweep result.
std::vector<std::pair<std::string, std::string>> spec_meta(const SweepSpec& spec);

/// Phases for one cell: the override if present, else the closed forms of
/// the physical configuration.
PhaseSet cell_phases(SetupKind setup, const PhysicalParams& params,
                     const std::optional<PhaseOverride>& phase_override,
                     bool unphysical_mode);

/// One measure of the configuration described by `phases`. The negativity
/// family and the witness act on the dephased state at (gamma_hz, tau_s);
/// tangle and chi are pure-state quantities and ignore the channel.
double evaluate_measure(Measure measure, const PhaseSet& phases,
                        double gamma_hz, double tau_s);

/// Single-point evaluation with the spec's setup/params/override.
double run_point(const SweepSpec& spec);

/// measure(dphi2, dphi3) over a 2-D grid of phase differences, parallel
/// setup only (the non-parallel phase spaces are not two-dimensional).
SweepResult run_phase_surface(const SweepSpec& spec);

/// measure over a (superposition width, gamma) grid at otherwise fixed
/// params. Cells whose geometry throws are recorded as NaN.
SweepResult run_lgamma_map(const SweepSpec& spec);

/// measure against interaction time tau, one column per (setup, gamma).
SweepResult run_time_series(const SweepSpec& spec);

/// Named detection predicates for the threshold search.
struct ThresholdPredicate {
  enum class Kind { WitnessNegative, TrinegAbove };
  Kind kind = Kind::WitnessNegative;
  double trineg_tol = 1e-6;
};

/// Largest gamma at which `detects` still holds, assuming detection is
/// monotone (true up to some gamma, false beyond).
///
/// Pre-samples 16 equispaced points of [0, gamma_hi]: false at 0 throws
/// NoDetectionAtZero, a true after the first false throws
/// NonMonotonePredicate (the message reports the sample grid), all-true
/// returns gamma_hi. Otherwise bisects the sign change to 1e-6 Hz or 60
/// iterations.
double find_gamma_threshold(const std::function<bool(double)>& detects,
                            double gamma_hi);

/// Threshold of a named predicate on the physical configuration's dephased
/// state, gamma being the bisection variable.
double find_gamma_threshold(SetupKind setup, const PhysicalParams& params,
                            const ThresholdPredicate& predicate,
                            double gamma_hi,
                            const std::optional<PhaseOverride>& phase_override = {},
                            bool unphysical_mode = false);

}  // namespace qgem
