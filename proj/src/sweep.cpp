#include "qgem/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qgem/states.hpp"

namespace qgem {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Runs body(0) .. body(count - 1) on up to `jobs` workers. Cell order is
// unspecified; callers address output slots by index, so results do not
// depend on the scheduling.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
  const int workers = std::min(jobs, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void check_axis(const AxisSpec& axis) {
  if (axis.steps < 2) {
    throw InvalidSpec("axis '" + axis.name + "' needs at least 2 steps");
  }
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || axis.min >= axis.max) {
    throw InvalidSpec("axis '" + axis.name + "' needs finite min < max");
  }
  if (axis.log_scale && axis.min <= 0.0) {
    throw InvalidSpec("axis '" + axis.name + "' is log-scaled and needs min > 0");
  }
}


bool is_geometry_error(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const InvalidParameter&) {
    return true;
  } catch (const DegenerateGeometry&) {
    return true;
  } catch (const UnphysicalGeometry&) {
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> spec_meta(const SweepSpec& spec) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("mode", to_string(spec.mode));
  if (spec.mode == SweepMode::TimeSeries && !spec.setups.empty()) {
    std::string joined;
    for (SetupKind s : spec.setups) {
      if (!joined.empty()) joined += ";";
      joined += to_string(s);
    }
    meta.emplace_back("setup", joined);
  } else {
    meta.emplace_back("setup", to_string(spec.setup));
  }
  meta.emplace_back("measure", to_string(spec.measure));
  meta.emplace_back("mass_kg", format_value(spec.params.mass_kg));
  meta.emplace_back("d_min_m", format_value(spec.params.d_min_m));
  meta.emplace_back("width_m", format_value(spec.params.width_m));
  meta.emplace_back("tau_s", format_value(spec.params.tau_s));
  if (spec.mode == SweepMode::TimeSeries && !spec.gamma_values.empty()) {
    std::string joined;
    for (double g : spec.gamma_values) {
      if (!joined.empty()) joined += ";";
      joined += format_value(g);
    }
    meta.emplace_back("gamma_hz", joined);
  } else {
    meta.emplace_back("gamma_hz", format_value(spec.params.gamma_hz));
  }
  if (spec.phase_override) {
    meta.emplace_back("dphi2", format_value(spec.phase_override->dphi2));
    meta.emplace_back("dphi3", format_value(spec.phase_override->dphi3));
    if (spec.setup != SetupKind::Parallel) {
      meta.emplace_back("dphi4", format_value(spec.phase_override->dphi4));
    }
  }
  meta.emplace_back("unphysical_mode", spec.unphysical_mode ? "true" : "false");
  meta.emplace_back("G", format_value(kGravitationalConstant));
  meta.emplace_back("hbar", format_value(kHbar));
  meta.emplace_back("version", kVersion);
  return meta;
}

const char* to_string(Measure m) {
  switch (m) {
    case Measure::NegA: return "neg-A";
    case Measure::NegB: return "neg-B";
    case Measure::NegC: return "neg-C";
    case Measure::TriNeg: return "trineg";
    case Measure::Tangle: return "tangle";
    case Measure::Chi: return "chi";
    case Measure::Witness: return "witness";
  }
  return "?";
}

std::optional<Measure> measure_from_string(std::string_view name) {
  if (name == "neg-A") return Measure::NegA;
  if (name == "neg-B") return Measure::NegB;
  if (name == "neg-C") return Measure::NegC;
  if (name == "trineg") return Measure::TriNeg;
  if (name == "tangle") return Measure::Tangle;
  if (name == "chi") return Measure::Chi;
  if (name == "witness") return Measure::Witness;
  return std::nullopt;
}

const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::Point: return "point";
    case SweepMode::PhaseSurface: return "phase-surface";
    case SweepMode::LGammaMap: return "lgamma-map";
    case SweepMode::TimeSeries: return "time-series";
    case SweepMode::Threshold: return "threshold";
  }
  return "?";
}

double AxisSpec::value_at(int i) const {
  if (i < 0 || i >= steps) {
    throw InvalidSpec("axis '" + name + "': index " + std::to_string(i) +
                      " outside [0, " + std::to_string(steps - 1) + "]");
  }
  if (i == 0) return min;
  if (i == steps - 1) return max;
  const double t = static_cast<double>(i) / (steps - 1);
  if (log_scale) return min * std::pow(max / min, t);
  return min + (max - min) * t;
}

void SweepSpec::validate() const {
  params.validate();
  if (jobs < 1) throw InvalidSpec("jobs must be >= 1");
  for (const AxisSpec& axis : axes) check_axis(axis);
  if (!setups.empty() && mode != SweepMode::TimeSeries) {
    throw InvalidSpec("a setup list applies to time-series only");
  }
  for (double g : gamma_values) {
    if (!std::isfinite(g) || g < 0.0) {
      throw InvalidSpec("gamma values must be finite and non-negative");
    }
  }
  switch (mode) {
    case SweepMode::Point:
    case SweepMode::Threshold:
      if (!axes.empty()) {
        throw InvalidSpec(std::string(to_string(mode)) + " takes no axes");
      }
      break;
    case SweepMode::PhaseSurface:
      if (axes.size() != 2) {
        throw InvalidSpec("phase-surface needs exactly 2 axes");
      }
      if (setup != SetupKind::Parallel) {
        throw InvalidSpec(
            "phase-surface supports the parallel setup only; the linear and "
            "star phase spaces are not two-dimensional");
      }
      if (phase_override) {
        throw InvalidSpec("phase-surface sweeps the phase differences; a fixed "
                          "override does not apply");
      }
      break;
    case SweepMode::LGammaMap:
      if (axes.size() != 2) {
        throw InvalidSpec("lgamma-map needs exactly 2 axes");
      }
      if (phase_override) {
        throw InvalidSpec("lgamma-map sweeps the physical geometry; a phase "
                          "override does not apply");
      }
      break;
    case SweepMode::TimeSeries:
      if (axes.size() != 1) {
        throw InvalidSpec("time-series needs exactly 1 axis");
      }
      if (axes[0].min < 0.0) {
        throw InvalidSpec("time-series needs tau >= 0");
      }
      break;
  }
}

PhaseSet cell_phases(SetupKind setup, const PhysicalParams& params,
                     const std::optional<PhaseOverride>& phase_override,
                     bool unphysical_mode) {
  if (phase_override) {
    return PhaseSet::from_deltas(setup, phase_override->dphi2,
                                 phase_override->dphi3, phase_override->dphi4);
  }
  return closed_form_phases(setup, params, unphysical_mode);
}

double evaluate_measure(Measure measure, const PhaseSet& phases, double gamma_hz,
                        double tau_s) {
  switch (measure) {
    case Measure::Tangle:
      return three_tangle_pure(evolved_state(phases));
    case Measure::Chi:
      return chi(evolved_state(phases));
    case Measure::NegA:
      return negativity(decohered_state(phases, gamma_hz, tau_s), Bipartition::A_BC);
    case Measure::NegB:
      return negativity(decohered_state(phases, gamma_hz, tau_s), Bipartition::B_AC);
    case Measure::NegC:
      return negativity(decohered_state(phases, gamma_hz, tau_s), Bipartition::C_AB);
    case Measure::TriNeg:
      return tripartite_negativity(decohered_state(phases, gamma_hz, tau_s));
    case Measure::Witness:
      return witness_expectation(decohered_state(phases, gamma_hz, tau_s), phases)
          .expectation;
  }
  throw InvalidSpec("unknown measure");
}

double run_point(const SweepSpec& spec) {
  if (spec.mode != SweepMode::Point) throw InvalidSpec("run_point needs mode=point");
  spec.validate();
  const PhaseSet phases = cell_phases(spec.setup, spec.params, spec.phase_override,
                                      spec.unphysical_mode);
  return evaluate_measure(spec.measure, phases, spec.params.gamma_hz,
                          spec.params.tau_s);
}

SweepResult run_phase_surface(const SweepSpec& spec) {
  if (spec.mode != SweepMode::PhaseSurface) {
    throw InvalidSpec("run_phase_surface needs mode=phase-surface");
  }
  spec.validate();
  const AxisSpec& ax0 = spec.axes[0];
  const AxisSpec& ax1 = spec.axes[1];
  SweepResult result;
  result.meta = spec_meta(spec);
  result.axes = spec.axes;
  result.columns = {ax0.name, ax1.name, to_string(spec.measure)};
  const int count = ax0.steps * ax1.steps;
  result.rows.assign(static_cast<size_t>(count), std::vector<double>(3, 0.0));
  parallel_for(count, spec.jobs, [&](int cell) {
    const double v0 = ax0.value_at(cell / ax1.steps);
    const double v1 = ax1.value_at(cell % ax1.steps);
    const PhaseSet phases = PhaseSet::from_deltas(SetupKind::Parallel, v0, v1);
    std::vector<double>& row = result.rows[static_cast<size_t>(cell)];
    row[0] = v0;
    row[1] = v1;
    row[2] = evaluate_measure(spec.measure, phases, spec.params.gamma_hz,
                              spec.params.tau_s);
  });
  return result;
}

SweepResult run_lgamma_map(const SweepSpec& spec) {
  if (spec.mode != SweepMode::LGammaMap) {
    throw InvalidSpec("run_lgamma_map needs mode=lgamma-map");
  }
  spec.validate();
  const AxisSpec& ax0 = spec.axes[0];  // superposition width
  const AxisSpec& ax1 = spec.axes[1];  // gamma
  SweepResult result;
  result.meta = spec_meta(spec);
  result.axes = spec.axes;
  result.columns = {ax0.name, ax1.name, to_string(spec.measure)};
  const int count = ax0.steps * ax1.steps;
  result.rows.assign(static_cast<size_t>(count), std::vector<double>(3, 0.0));
  parallel_for(count, spec.jobs, [&](int cell) {
    const double width = ax0.value_at(cell / ax1.steps);
    const double gamma = ax1.value_at(cell % ax1.steps);
    PhysicalParams params = spec.params;
    params.width_m = width;
    params.gamma_hz = gamma;
    std::vector<double>& row = result.rows[static_cast<size_t>(cell)];
    row[0] = width;
    row[1] = gamma;
    try {
      const PhaseSet phases =
          closed_form_phases(spec.setup, params, spec.unphysical_mode);
      row[2] = evaluate_measure(spec.measure, phases, gamma, params.tau_s);
    } catch (...) {
      if (!is_geometry_error(std::current_exception())) throw;
      row[2] = std::numeric_limits<double>::quiet_NaN();
    }
  });
  return result;
}

SweepResult run_time_series(const SweepSpec& spec) {
  if (spec.mode != SweepMode::TimeSeries) {
    throw InvalidSpec("run_time_series needs mode=time-series");
  }
  spec.validate();
  const AxisSpec& axis = spec.axes[0];
  const std::vector<SetupKind> setups =
      spec.setups.empty() ? std::vector<SetupKind>{spec.setup} : spec.setups;
  const std::vector<double> gammas = spec.gamma_values.empty()
                                         ? std::vector<double>{spec.params.gamma_hz}
                                         : spec.gamma_values;
  SweepResult result;
  result.meta = spec_meta(spec);
  result.axes = {axis};
  result.columns.push_back(axis.name);
  for (SetupKind s : setups) {
    for (double g : gammas) {
      result.columns.push_back(std::string(to_string(s)) + ":g=" + format_value(g) +
                               ":" + to_string(spec.measure));
    }
  }
  const size_t width = result.columns.size();
  result.rows.assign(static_cast<size_t>(axis.steps),
                     std::vector<double>(width, 0.0));
  parallel_for(axis.steps, spec.jobs, [&](int i) {
    const double tau = axis.value_at(i);
    std::vector<double>& row = result.rows[static_cast<size_t>(i)];
    row[0] = tau;
    size_t col = 1;
    for (SetupKind s : setups) {
      for (double g : gammas) {
        PhysicalParams params = spec.params;
        params.tau_s = tau;
        params.gamma_hz = g;
        try {
          const PhaseSet phases =
              cell_phases(s, params, spec.phase_override, spec.unphysical_mode);
          row[col] = evaluate_measure(spec.measure, phases, g, tau);
        } catch (...) {
          if (!is_geometry_error(std::current_exception())) throw;
          row[col] = std::numeric_limits<double>::quiet_NaN();
        }
        ++col;
      }
    }
  });
  return result;
}

void SweepResult::write_csv(std::ostream& out) const {
  for (const auto& [key, value] : meta) {
    out << "# " << key << "=" << value << "\n";
  }
  for (const AxisSpec& axis : axes) {
    out << "# axis." << axis.name << "=" << format_value(axis.min) << ":"
        << format_value(axis.max) << ":" << axis.steps
        << (axis.log_scale ? ":log" : "") << "\n";
  }
  for (size_t c = 0; c < columns.size(); ++c) {
    out << (c ? "," : "") << columns[c];
  }
  out << "\n";
  for (const std::vector<double>& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      if (!std::isnan(row[c])) out << format_value(row[c]);
    }
    out << "\n";
  }
}

void SweepResult::write_json(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : meta) {
    j["meta"][key] = value;
  }
  j["meta"]["columns"] = columns;
  j["axes"] = nlohmann::ordered_json::array();
  for (const AxisSpec& axis : axes) {
    j["axes"].push_back({{"name", axis.name},
                         {"min", axis.min},
                         {"max", axis.max},
                         {"steps", axis.steps},
                         {"log_scale", axis.log_scale}});
  }
  j["rows"] = rows;  // NaN cells serialize as null
  out << j.dump(2) << "\n";
}

double find_gamma_threshold(const std::function<bool(double)>& detects,
                            double gamma_hi) {
  if (!std::isfinite(gamma_hi) || gamma_hi <= 0.0) {
    throw InvalidSpec("gamma_hi must be positive and finite");
  }
  if (!detects) throw InvalidSpec("detection predicate must be callable");
  constexpr int kSamples = 16;
  double grid[kSamples];
  bool hit[kSamples];
  for (int k = 0; k < kSamples; ++k) {
    grid[k] = gamma_hi * (static_cast<double>(k) / (kSamples - 1));
    hit[k] = detects(grid[k]);
  }
  if (!hit[0]) {
    throw NoDetectionAtZero("no detection at gamma = 0; nothing to threshold");
  }
  int first_false = kSamples;
  for (int k = 1; k < kSamples; ++k) {
    if (!hit[k]) {
      first_false = k;
      break;
    }
  }
  if (first_false == kSamples) return gamma_hi;
  for (int k = first_false + 1; k < kSamples; ++k) {
    if (hit[k]) {
      std::string report = "detection is not monotone in gamma; samples:";
      for (int s = 0; s < kSamples; ++s) {
        report += " ";
        report += format_value(grid[s]);
        report += hit[s] ? "+" : "-";
      }
      throw NonMonotonePredicate(report);
    }
  }
  double lo = grid[first_false - 1];
  double hi = grid[first_false];
  for (int it = 0; it < 60 && (hi - lo) > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    (detects(mid) ? lo : hi) = mid;
  }
  return lo;
}

double find_gamma_threshold(SetupKind setup, const PhysicalParams& params,
                            const ThresholdPredicate& predicate, double gamma_hi,
                            const std::optional<PhaseOverride>& phase_override,
                            bool unphysical_mode) {
  params.validate();
  if (predicate.kind == ThresholdPredicate::Kind::TrinegAbove &&
      (!std::isfinite(predicate.trineg_tol) || predicate.trineg_tol <= 0.0)) {
    throw InvalidSpec("trineg threshold tolerance must be positive and finite");
  }
  const PhaseSet phases = cell_phases(setup, params, phase_override, unphysical_mode);
  const auto detects = [&](double gamma) {
    const DensityMatrix rho = decohered_state(phases, gamma, params.tau_s);
    if (predicate.kind == ThresholdPredicate::Kind::WitnessNegative) {
      return witness_expectation(rho, phases).expectation < -1e-12;
    }
    return tripartite_negativity(rho) > predicate.trineg_tol;
  };
  return find_gamma_threshold(detects, gamma_hi);
}

}  // namespace qgem
