#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgem/classify.hpp"
#include "qgem/sweep.hpp"

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Options {
  std::string setup = "parallel";
  double mass = 1e-14;
  double dmin = 35e-6;
  double width = 10e-6;
  double tau = 2.5;
  std::string gamma = "0";
  std::string measure = "trineg";
  std::string out;
  std::string format = "csv";
  std::string grid;
  std::string dphi2_range;
  std::string dphi3_range;
  std::string l_range;
  std::string gamma_range;
  std::string tau_range;
  double dphi2 = 0.0;
  double dphi3 = 0.0;
  double dphi4 = 0.0;
  double eps = 1e-9;
  bool log_gamma = false;
  bool unphysical = false;
  int jobs = 1;
  std::string predicate = "witness";
  double trineg_tol = 1e-6;
  double gamma_hi = 1.0;
};

double parse_double(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw qgem::InvalidSpec(what + ": cannot parse '" + text + "' as a number");
  }
}

std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& what) {
  const size_t sep = text.find(':');
  if (sep == std::string::npos) {
    throw qgem::InvalidSpec(what + ": expected 'lo:hi', got '" + text + "'");
  }
  return {parse_double(text.substr(0, sep), what),
          parse_double(text.substr(sep + 1), what)};
}

int parse_steps(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size() || v < 2) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw qgem::InvalidSpec(what + ": expected an integer >= 2, got '" + text + "'");
  }
}

// "N" or "NxM"; empty picks the per-mode default.
std::pair<int, int> parse_grid(const std::string& text, int def0, int def1) {
  if (text.empty()) return {def0, def1};
  const size_t sep = text.find('x');
  if (sep == std::string::npos) {
    const int n = parse_steps(text, "--grid");
    return {n, n};
  }
  return {parse_steps(text.substr(0, sep), "--grid"),
          parse_steps(text.substr(sep + 1), "--grid")};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_gamma_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& piece : split(text, ',')) {
    out.push_back(parse_double(piece, "--gamma"));
  }
  return out;
}

qgem::SetupKind parse_one_setup(const std::string& text) {
  const auto setup = qgem::setup_from_string(text);
  if (!setup) {
    throw qgem::InvalidSpec("--setup: expected parallel, linear or star, got '" +
                            text + "'");
  }
  return *setup;
}

std::vector<qgem::SetupKind> parse_setup_list(const std::string& text) {
  if (text == "all") {
    return {qgem::SetupKind::Parallel, qgem::SetupKind::Linear,
            qgem::SetupKind::Star};
  }
  std::vector<qgem::SetupKind> out;
  for (const std::string& piece : split(text, ',')) {
    out.push_back(parse_one_setup(piece));
  }
  return out;
}

qgem::Measure parse_measure(const std::string& text) {
  const auto measure = qgem::measure_from_string(text);
  if (!measure) {
    throw qgem::InvalidSpec(
        "--measure: expected neg-A, neg-B, neg-C, trineg, tangle, chi or "
        "witness, got '" + text + "'");
  }
  return *measure;
}

double single_gamma(const Options& opt) {
  const std::vector<double> gammas = parse_gamma_list(opt.gamma);
  if (gammas.size() != 1) {
    throw qgem::InvalidSpec("this mode takes a single --gamma value");
  }
  return gammas[0];
}

qgem::PhysicalParams base_params(const Options& opt, double gamma) {
  qgem::PhysicalParams params;
  params.mass_kg = opt.mass;
  params.d_min_m = opt.dmin;
  params.width_m = opt.width;
  params.tau_s = opt.tau;
  params.gamma_hz = gamma;
  return params;
}

std::optional<qgem::PhaseOverride> phase_override(const CLI::App& app,
                                                  const Options& opt) {
  if (app.count("--dphi2") == 0 && app.count("--dphi3") == 0 &&
      app.count("--dphi4") == 0) {
    return std::nullopt;
  }
  return qgem::PhaseOverride{opt.dphi2, opt.dphi3, opt.dphi4};
}

void write_result(const qgem::SweepResult& result, const Options& opt) {
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw qgem::InvalidSpec("cannot open output file '" + opt.out + "'");
  }
  std::ostream& out = opt.out.empty() ? std::cout : file;
  if (opt.format == "csv") {
    result.write_csv(out);
  } else if (opt.format == "json") {
    result.write_json(out);
  } else {
    throw qgem::InvalidSpec("--format: expected csv or json, got '" + opt.format +
                            "'");
  }
}

void run_point_cmd(const CLI::App& app, const Options& opt) {
  qgem::SweepSpec spec;
  spec.mode = qgem::SweepMode::Point;
  spec.setup = parse_one_setup(opt.setup);
  spec.measure = parse_measure(opt.measure);
  spec.params = base_params(opt, single_gamma(opt));
  spec.phase_override = phase_override(app, opt);
  spec.unphysical_mode = opt.unphysical;
  spec.jobs = opt.jobs;
  const double value = qgem::run_point(spec);

  qgem::SweepResult result;
  result.meta = qgem::spec_meta(spec);
  result.columns = {qgem::to_string(spec.measure)};
  result.rows = {{value}};
  write_result(result, opt);
}

void run_phase_surface_cmd(const CLI::App& app, const Options& opt) {
  qgem::SweepSpec spec;
  spec.mode = qgem::SweepMode::PhaseSurface;
  spec.setup = parse_one_setup(opt.setup);
  spec.measure = parse_measure(opt.measure);
  spec.params = base_params(opt, single_gamma(opt));
  spec.phase_override = phase_override(app, opt);
  spec.unphysical_mode = opt.unphysical;
  spec.jobs = opt.jobs;
  const auto [steps2, steps3] = parse_grid(opt.grid, 101, 101);
  const auto [lo2, hi2] = opt.dphi2_range.empty()
                              ? std::make_pair(0.0, kTwoPi)
                              : parse_range(opt.dphi2_range, "--dphi2-range");
  const auto [lo3, hi3] = opt.dphi3_range.empty()
                              ? std::make_pair(0.0, kTwoPi)
                              : parse_range(opt.dphi3_range, "--dphi3-range");
  spec.axes = {{"dphi2", lo2, hi2, steps2, false},
               {"dphi3", lo3, hi3, steps3, false}};
  write_result(qgem::run_phase_surface(spec), opt);
}

void run_lgamma_map_cmd(const CLI::App& app, const Options& opt) {
  qgem::SweepSpec spec;
  spec.mode = qgem::SweepMode::LGammaMap;
  spec.setup = parse_one_setup(opt.setup);
  spec.measure = parse_measure(opt.measure);
  spec.params = base_params(opt, single_gamma(opt));
  spec.phase_override = phase_override(app, opt);
  spec.unphysical_mode = opt.unphysical;
  spec.jobs = opt.jobs;
  const auto [steps_l, steps_g] = parse_grid(opt.grid, 101, 101);
  const auto [lo_l, hi_l] = opt.l_range.empty()
                                ? std::make_pair(1e-6, 6e-5)
                                : parse_range(opt.l_range, "--l-range");
  const auto [lo_g, hi_g] = opt.gamma_range.empty()
                                ? std::make_pair(1e-3, 1.0)
                                : parse_range(opt.gamma_range, "--gamma-range");
  spec.axes = {{"l", lo_l, hi_l, steps_l, false},
               {"gamma", lo_g, hi_g, steps_g, opt.log_gamma}};
  write_result(qgem::run_lgamma_map(spec), opt);
}

void run_time_series_cmd(const CLI::App& app, const Options& opt) {
  qgem::SweepSpec spec;
  spec.mode = qgem::SweepMode::TimeSeries;
  spec.setups = parse_setup_list(opt.setup);
  spec.setup = spec.setups.front();
  spec.measure = parse_measure(opt.measure);
  spec.params = base_params(opt, 0.0);
  spec.gamma_values = parse_gamma_list(opt.gamma);
  spec.phase_override = phase_override(app, opt);
  spec.unphysical_mode = opt.unphysical;
  spec.jobs = opt.jobs;
  const auto [steps, ignored] = parse_grid(opt.grid, 251, 251);
  (void)ignored;
  const auto [lo, hi] = opt.tau_range.empty()
                            ? std::make_pair(0.0, 5.0)
                            : parse_range(opt.tau_range, "--tau-range");
  spec.axes = {{"tau", lo, hi, steps, false}};
  write_result(qgem::run_time_series(spec), opt);
}

void run_threshold_cmd(const CLI::App& app, const Options& opt) {
  qgem::SweepSpec spec;
  spec.mode = qgem::SweepMode::Threshold;
  spec.setup = parse_one_setup(opt.setup);
  spec.measure = parse_measure(opt.measure);
  spec.params = base_params(opt, 0.0);
  spec.phase_override = phase_override(app, opt);
  spec.unphysical_mode = opt.unphysical;
  spec.jobs = opt.jobs;

  qgem::ThresholdPredicate predicate;
  if (opt.predicate == "witness") {
    predicate.kind = qgem::ThresholdPredicate::Kind::WitnessNegative;
  } else if (opt.predicate == "trineg") {
    predicate.kind = qgem::ThresholdPredicate::Kind::TrinegAbove;
    predicate.trineg_tol = opt.trineg_tol;
  } else {
    throw qgem::InvalidSpec("--predicate: expected witness or trineg, got '" +
                            opt.predicate + "'");
  }
  const double gamma_star = qgem::find_gamma_threshold(
      spec.setup, spec.params, predicate, opt.gamma_hi, spec.phase_override,
      spec.unphysical_mode);

  qgem::SweepResult result;
  result.meta = qgem::spec_meta(spec);
  result.meta.emplace_back("predicate", opt.predicate);
  if (predicate.kind == qgem::ThresholdPredicate::Kind::TrinegAbove) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", predicate.trineg_tol);
    result.meta.emplace_back("trineg_tol", buf);
  }
  {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", opt.gamma_hi);
    result.meta.emplace_back("gamma_hi", buf);
  }
  result.columns = {"gamma_star"};
  result.rows = {{gamma_star}};
  write_result(result, opt);
}

void run_classify_cmd(const CLI::App& app, const Options& opt) {
  const qgem::SetupKind setup = parse_one_setup(opt.setup);
  if (setup == qgem::SetupKind::Star) {
    throw qgem::InvalidSpec(
        "classify supports parallel and linear; the star setup has no "
        "symbolic phase classifier");
  }
  double d2 = opt.dphi2;
  double d3 = opt.dphi3;
  double d4 = opt.dphi4;
  const bool explicit_deltas = phase_override(app, opt).has_value();
  if (!explicit_deltas) {
    const qgem::PhysicalParams params = base_params(opt, 0.0);
    const qgem::PhaseSet phases =
        qgem::closed_form_phases(setup, params, opt.unphysical);
    d2 = phases.delta_phase(2);
    d3 = phases.delta_phase(3);
    d4 = setup == qgem::SetupKind::Linear ? phases.delta_phase(4) : 0.0;
  }
  const qgem::Classification result =
      setup == qgem::SetupKind::Parallel
          ? qgem::classify_parallel(d2, d3, opt.eps)
          : qgem::classify_linear(d2, d3, d4, opt.eps);

  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) throw qgem::InvalidSpec("cannot open output file '" + opt.out + "'");
  }
  std::ostream& out = opt.out.empty() ? std::cout : file;
  char b2[40], b3[40], b4[40];
  std::snprintf(b2, sizeof b2, "%.15g", d2);
  std::snprintf(b3, sizeof b3, "%.15g", d3);
  std::snprintf(b4, sizeof b4, "%.15g", d4);
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["setup"] = qgem::to_string(setup);
    j["class"] = qgem::to_string(result.state_class);
    j["condition"] = result.condition;
    j["dphi2"] = d2;
    j["dphi3"] = d3;
    if (setup == qgem::SetupKind::Linear) j["dphi4"] = d4;
    out << j.dump(2) << "\n";
  } else if (opt.format == "csv") {
    out << "setup,class,condition,dphi2,dphi3";
    if (setup == qgem::SetupKind::Linear) out << ",dphi4";
    out << "\n" << qgem::to_string(setup) << "," << qgem::to_string(result.state_class)
        << "," << result.condition << "," << b2 << "," << b3;
    if (setup == qgem::SetupKind::Linear) out << "," << b4;
    out << "\n";
  } else {
    throw qgem::InvalidSpec("--format: expected csv or json, got '" + opt.format +
                            "'");
  }
}

int error_exit_code(const qgem::Error& e) {
  const bool numerical = dynamic_cast<const qgem::NumericalConsistency*>(&e) ||
                         dynamic_cast<const qgem::InvalidMatrix*>(&e) ||
                         dynamic_cast<const qgem::NotHermitian*>(&e) ||
                         dynamic_cast<const qgem::NotNormalized*>(&e) ||
                         dynamic_cast<const qgem::DimensionMismatch*>(&e);
  return numerical ? 3 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "Three-mass gravitational entanglement: phase evolution, dephasing, "
      "entanglement measures and parameter sweeps"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  app.add_option("--setup", opt.setup,
                 "Geometry: parallel, linear or star (time-series also takes a "
                 "comma list or 'all')")
      ->capture_default_str();
  app.add_option("--mass", opt.mass, "Mass of each particle [kg]")
      ->capture_default_str();
  app.add_option("--dmin", opt.dmin, "Closest allowed approach d_min [m]")
      ->capture_default_str();
  app.add_option("--l", opt.width, "Superposition width l [m]")
      ->capture_default_str();
  app.add_option("--tau", opt.tau, "Interaction time tau [s]")
      ->capture_default_str();
  app.add_option("--gamma", opt.gamma,
                 "Dephasing rate [Hz]; time-series takes a comma list")
      ->capture_default_str();
  app.add_option("--measure", opt.measure,
                 "neg-A, neg-B, neg-C, trineg, tangle, chi or witness")
      ->capture_default_str();
  app.add_option("--out", opt.out, "Output file (default: stdout)");
  app.add_option("--format", opt.format, "Output format: csv or json")
      ->capture_default_str();
  app.add_option("--grid", opt.grid, "Grid steps: N or NxM (default 101x101, "
                                     "time-series 251)");
  app.add_option("--dphi2", opt.dphi2, "Phase difference override dphi2 [rad]");
  app.add_option("--dphi3", opt.dphi3, "Phase difference override dphi3 [rad]");
  app.add_option("--dphi4", opt.dphi4,
                 "Phase difference override dphi4 [rad] (linear/star)");
  app.add_option("--eps", opt.eps, "Classification tolerance [rad]")
      ->capture_default_str();
  app.add_flag("--log-gamma", opt.log_gamma,
               "Log-spaced gamma axis in lgamma-map");
  app.add_flag("--unphysical-mode", opt.unphysical,
               "Admit inverted (negative-distance) linear geometries");
  app.add_option("--jobs", opt.jobs, "Worker threads for sweeps")
      ->capture_default_str();

  CLI::App* point = app.add_subcommand("point", "Evaluate one measure at one "
                                                "configuration");
  CLI::App* surface = app.add_subcommand(
      "phase-surface", "Sweep a measure over the (dphi2, dphi3) plane "
                       "(parallel setup)");
  surface->add_option("--dphi2-range", opt.dphi2_range,
                      "dphi2 axis as lo:hi [rad] (default 0:2pi)");
  surface->add_option("--dphi3-range", opt.dphi3_range,
                      "dphi3 axis as lo:hi [rad] (default 0:2pi)");
  CLI::App* lgamma = app.add_subcommand(
      "lgamma-map", "Sweep a measure over the (l, gamma) plane");
  lgamma->add_option("--l-range", opt.l_range,
                     "Superposition width axis as lo:hi [m] (default 1e-6:6e-5)");
  lgamma->add_option("--gamma-range", opt.gamma_range,
                     "Dephasing axis as lo:hi [Hz] (default 1e-3:1)");
  CLI::App* series = app.add_subcommand(
      "time-series", "Sweep a measure over the interaction time tau");
  series->add_option("--tau-range", opt.tau_range,
                     "tau axis as lo:hi [s] (default 0:5)");
  CLI::App* threshold = app.add_subcommand(
      "threshold", "Bisect the largest gamma at which detection holds");
  threshold->add_option("--predicate", opt.predicate,
                        "Detection predicate: witness or trineg")
      ->capture_default_str();
  threshold->add_option("--trineg-tol", opt.trineg_tol,
                        "Detection level for the trineg predicate")
      ->capture_default_str();
  threshold->add_option("--gamma-hi", opt.gamma_hi,
                        "Upper end of the bisection bracket [Hz]")
      ->capture_default_str();
  CLI::App* classify = app.add_subcommand(
      "classify", "Symbolic entanglement class from the phase differences");

  for (CLI::App* sub : {point, surface, lgamma, series, threshold, classify}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (point->parsed()) {
      run_point_cmd(app, opt);
    } else if (surface->parsed()) {
      run_phase_surface_cmd(app, opt);
    } else if (lgamma->parsed()) {
      run_lgamma_map_cmd(app, opt);
    } else if (series->parsed()) {
      run_time_series_cmd(app, opt);
    } else if (threshold->parsed()) {
      run_threshold_cmd(app, opt);
    } else if (classify->parsed()) {
      run_classify_cmd(app, opt);
    }
  } catch (const qgem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return error_exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
