#include <doctest.h>

#include <cmath>

#include "qgem/setups.hpp"
#include "test_helpers.hpp"

using namespace qgem;
using testutil::kPi;
using testutil::make_rng;

namespace {

PhysicalParams defaults() { return PhysicalParams{}; }

void check_phase_sets_close(const PhaseSet& a, const PhaseSet& b, double rel) {
  for (int i = 0; i < 8; ++i) {
    const double scale = std::max(std::abs(a.phases[i]), 1.0);
    CHECK(std::abs(a.phases[i] - b.phases[i]) <= rel * scale);
  }
}

}  // namespace

TEST_CASE("constants and separation rules") {
  CHECK(kGravitationalConstant == 6.67430e-11);
  CHECK(kHbar == 1.054571817e-34);

  const PhysicalParams p = defaults();
  CHECK(p.separation(SetupKind::Parallel) == 35e-6);
  CHECK(p.separation(SetupKind::Star) == 35e-6);
  CHECK(p.separation(SetupKind::Linear) == doctest::Approx(45e-6).epsilon(1e-15));

  PhysicalParams overridden = defaults();
  overridden.separation_override_m = 20e-6;
  CHECK(overridden.separation(SetupKind::Linear) == 20e-6);
  CHECK(overridden.separation(SetupKind::Parallel) == 20e-6);
}

TEST_CASE("parameter validation") {
  PhysicalParams p = defaults();
  CHECK_NOTHROW(p.validate());

  p.mass_kg = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = defaults();
  p.d_min_m = -1e-6;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = defaults();
  p.width_m = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = defaults();
  p.tau_s = -0.1;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = defaults();
  p.gamma_hz = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = defaults();
  p.mass_kg = std::nan("");
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = defaults();
  p.separation_override_m = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
}

TEST_CASE("setup names round-trip") {
  for (SetupKind s : {SetupKind::Parallel, SetupKind::Linear, SetupKind::Star}) {
    const auto parsed = setup_from_string(to_string(s));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);
  }
  CHECK(!setup_from_string("ring").has_value());
}

TEST_CASE("basis_bit: big-endian qubit labels") {
  // idx 5 = |101>
  CHECK(basis_bit(5, 1) == 1);
  CHECK(basis_bit(5, 2) == 0);
  CHECK(basis_bit(5, 3) == 1);
  CHECK(basis_bit(4, 1) == 1);  // idx 4 = |100>
  CHECK(basis_bit(1, 3) == 1);  // idx 1 = |001>
  CHECK_THROWS_AS(basis_bit(8, 1), InvalidParameter);
  CHECK_THROWS_AS(basis_bit(-1, 1), InvalidParameter);
  CHECK_THROWS_AS(basis_bit(0, 0), InvalidParameter);
}

TEST_CASE("from_deltas places each distinct phase on its degeneracy class") {
  const PhaseSet par = PhaseSet::from_deltas(SetupKind::Parallel, 0.3, 0.7, 9.9);
  CHECK(par.phases[0] == 0.0);
  CHECK(par.phases[7] == 0.0);
  for (int idx : {1, 3, 4, 6}) CHECK(par.phases[idx] == 0.3);
  for (int idx : {2, 5}) CHECK(par.phases[idx] == 0.7);
  CHECK(par.distinct_count() == 3);
  CHECK(par.delta_phase(2) == 0.3);
  CHECK(par.phase_factor(3) == std::polar(1.0, 0.7));

  const PhaseSet lin = PhaseSet::from_deltas(SetupKind::Linear, 0.3, 0.7, 1.1);
  CHECK(lin.phases[0] == 0.0);
  CHECK(lin.phases[7] == 0.0);
  for (int idx : {1, 3}) CHECK(lin.phases[idx] == 0.3);
  for (int idx : {2, 5}) CHECK(lin.phases[idx] == 0.7);
  for (int idx : {4, 6}) CHECK(lin.phases[idx] == 1.1);
  CHECK(lin.distinct_count() == 4);
  CHECK(lin.delta_phase(4) == 1.1);

  const PhaseSet star = PhaseSet::from_deltas(SetupKind::Star, 0.3, 0.7, 1.1);
  CHECK(star.phases[0] == 0.0);
  CHECK(star.phases[7] == 0.3);
  for (int idx : {1, 2, 4}) CHECK(star.phases[idx] == 0.7);
  for (int idx : {3, 5, 6}) CHECK(star.phases[idx] == 1.1);
  CHECK(star.distinct_phase(2) == 0.3);

  CHECK_THROWS_AS(PhaseSet::from_deltas(SetupKind::Linear, std::nan(""), 0, 0),
                  InvalidParameter);
  CHECK_THROWS_AS(par.distinct_phase(4), InvalidParameter);
  CHECK_THROWS_AS(par.distinct_phase(0), InvalidParameter);
}

TEST_CASE("check_degeneracy accepts matching and rejects broken patterns") {
  for (SetupKind s : {SetupKind::Parallel, SetupKind::Linear, SetupKind::Star}) {
    CHECK_NOTHROW(PhaseSet::from_deltas(s, 0.4, 1.2, 2.1).check_degeneracy());
    CHECK_NOTHROW(pairwise_phases(s, defaults()).check_degeneracy());
  }

  PhaseSet broken = PhaseSet::from_deltas(SetupKind::Parallel, 0.4, 1.2);
  broken.phases[6] += 1e-6;
  CHECK_THROWS_AS(broken.check_degeneracy(), DegeneracyViolation);

  // A linear pattern with distinct phi4 is not a parallel pattern.
  PhaseSet lin = PhaseSet::from_deltas(SetupKind::Linear, 0.4, 1.2, 2.1);
  lin.setup = SetupKind::Parallel;
  CHECK_THROWS_AS(lin.check_degeneracy(), DegeneracyViolation);

  CHECK_THROWS_AS(lin.check_degeneracy(-1.0), InvalidTolerance);
}

TEST_CASE("star_radius: frozen default and analytic identities") {
  CHECK(star_radius(defaults()) ==
        doctest::Approx(8.9456230203772e-06).epsilon(1e-12));

  // At l = d the radius is (sqrt(2 + sqrt 3) - 1) d.
  PhysicalParams square = defaults();
  square.d_min_m = 40e-6;
  square.width_m = 40e-6;
  const double expected = (std::sqrt(2.0 + std::sqrt(3.0)) - 1.0) * 40e-6;
  CHECK(star_radius(square) == doctest::Approx(expected).epsilon(1e-12));

  // Monotone in the superposition width.
  PhysicalParams narrow = defaults();
  narrow.width_m = 5e-6;
  CHECK(star_radius(narrow) < star_radius(defaults()));
}

TEST_CASE("instance_distance: geometry by cases") {
  const PhysicalParams p = defaults();
  const double d = 35e-6, l = 10e-6;

  CHECK(instance_distance(SetupKind::Parallel, p, 1, 0, 2, 0) == d);
  CHECK(instance_distance(SetupKind::Parallel, p, 1, 0, 3, 1) ==
        doctest::Approx(std::sqrt(4 * d * d + l * l)).epsilon(1e-15));
  CHECK(instance_distance(SetupKind::Parallel, p, 2, 1, 3, 0) ==
        doctest::Approx(std::sqrt(d * d + l * l)).epsilon(1e-15));

  const double dl = p.separation(SetupKind::Linear);
  CHECK(instance_distance(SetupKind::Linear, p, 1, 0, 2, 0) == dl);
  CHECK(instance_distance(SetupKind::Linear, p, 1, 0, 2, 1) ==
        doctest::Approx(dl + l).epsilon(1e-15));
  CHECK(instance_distance(SetupKind::Linear, p, 1, 1, 2, 0) ==
        doctest::Approx(dl - l).epsilon(1e-15));
  CHECK(instance_distance(SetupKind::Linear, p, 1, 1, 3, 0) ==
        doctest::Approx(2 * dl - l).epsilon(1e-15));

  // Inverted ordering goes negative only with an explicit small separation.
  PhysicalParams tight = defaults();
  tight.separation_override_m = 5e-6;
  CHECK(instance_distance(SetupKind::Linear, tight, 1, 1, 2, 0) < 0.0);

  CHECK(instance_distance(SetupKind::Star, p, 1, 0, 2, 0) == d);
  CHECK(instance_distance(SetupKind::Star, p, 1, 1, 2, 1) ==
        doctest::Approx(d + std::sqrt(3.0) * l).epsilon(1e-15));
  CHECK(instance_distance(SetupKind::Star, p, 1, 0, 2, 1) ==
        doctest::Approx(d + star_radius(p)).epsilon(1e-15));

  CHECK_THROWS_AS(instance_distance(SetupKind::Star, p, 2, 0, 1, 0),
                  InvalidParameter);
  CHECK_THROWS_AS(instance_distance(SetupKind::Star, p, 1, 2, 2, 0),
                  InvalidParameter);
}

TEST_CASE("phases: frozen values at defaults") {
  const PhaseSet par = closed_form_phases(SetupKind::Parallel, defaults());
  CHECK(par.distinct_phase(1) ==
        doctest::Approx(11.3016417327061).epsilon(1e-12));
  CHECK(par.delta_phase(2) == doctest::Approx(-0.196654467995661).epsilon(1e-9));
  CHECK(par.delta_phase(3) == doctest::Approx(-0.347874047241806).epsilon(1e-9));

  const PhaseSet star = closed_form_phases(SetupKind::Star, defaults());
  CHECK(star.distinct_phase(1) ==
        doctest::Approx(13.5619700792473).epsilon(1e-12));
}

TEST_CASE("phases: zero interaction time gives exactly zero phases") {
  PhysicalParams p = defaults();
  p.tau_s = 0.0;
  for (SetupKind s : {SetupKind::Parallel, SetupKind::Linear, SetupKind::Star}) {
    for (double phi : closed_form_phases(s, p).phases) CHECK(phi == 0.0);
    for (double phi : pairwise_phases(s, p).phases) CHECK(phi == 0.0);
  }
}

TEST_CASE("phases: closed form agrees with pairwise summation") {
  auto rng = make_rng(21);
  for (SetupKind s : {SetupKind::Parallel, SetupKind::Linear, SetupKind::Star}) {
    check_phase_sets_close(closed_form_phases(s, defaults()),
                           pairwise_phases(s, defaults()), 1e-12);
    for (int draw = 0; draw < 200; ++draw) {
      const PhysicalParams p = testutil::random_params(rng);
      const PhaseSet closed = closed_form_phases(s, p);
      const PhaseSet summed = pairwise_phases(s, p);
      for (int i = 0; i < 8; ++i) {
        CHECK(std::abs(closed.phases[i] - summed.phases[i]) <=
              1e-12 * std::abs(summed.phases[i]));
      }
    }
  }
}

TEST_CASE("linear geometry error policy") {
  PhysicalParams tight = defaults();
  tight.separation_override_m = 4e-6;  // l = 10e-6 > d, no pair distance at 0
  CHECK_THROWS_AS(closed_form_phases(SetupKind::Linear, tight),
                  UnphysicalGeometry);
  CHECK_THROWS_AS(pairwise_phases(SetupKind::Linear, tight), UnphysicalGeometry);
  CHECK_NOTHROW(closed_form_phases(SetupKind::Linear, tight, true));
  check_phase_sets_close(closed_form_phases(SetupKind::Linear, tight, true),
                         pairwise_phases(SetupKind::Linear, tight, true), 1e-12);

  PhysicalParams touching = defaults();
  touching.separation_override_m = touching.width_m;  // d - l = 0
  CHECK_THROWS_AS(closed_form_phases(SetupKind::Linear, touching),
                  DegenerateGeometry);
  CHECK_THROWS_AS(closed_form_phases(SetupKind::Linear, touching, true),
                  DegenerateGeometry);
  CHECK_THROWS_AS(pairwise_phases(SetupKind::Linear, touching, true),
                  DegenerateGeometry);

  // Derived linear separation d = d_min + l keeps every distance positive.
  PhysicalParams wide = defaults();
  wide.width_m = 200e-6;
  CHECK_NOTHROW(closed_form_phases(SetupKind::Linear, wide));
}

TEST_CASE("linear chain: equal-phase point at l = sqrt(5/2) d") {
  PhysicalParams p = defaults();
  const double d = 20e-6;
  p.separation_override_m = d;
  p.width_m = std::sqrt(2.5) * d;
  const PhaseSet ph = closed_form_phases(SetupKind::Linear, p, true);
  const double expected = kGravitationalConstant * p.mass_kg * p.mass_kg *
                          p.tau_s / kHbar * (5.0 / (3.0 * d));
  CHECK(ph.distinct_phase(2) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ph.distinct_phase(4) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(ph.distinct_phase(2) ==
        doctest::Approx(ph.distinct_phase(4)).epsilon(1e-12));
}

TEST_CASE("validate_geometry") {
  for (SetupKind s : {SetupKind::Parallel, SetupKind::Linear, SetupKind::Star}) {
    CHECK(validate_geometry(s, defaults()).empty());
  }

  PhysicalParams tight = defaults();
  tight.separation_override_m = 5e-6;  // all linear branch pairs under d_min
  const auto violations = validate_geometry(SetupKind::Linear, tight);
  CHECK(violations.size() == 12);
  bool found_negative = false;
  for (const auto& v : violations) {
    CHECK(!v.describe().empty());
    if (v.distance_m < 0.0) found_negative = true;
  }
  CHECK(found_negative);

  // Parallel geometry keeps branches at d_min or farther by construction.
  PhysicalParams wide = defaults();
  wide.width_m = 500e-6;
  CHECK(validate_geometry(SetupKind::Parallel, wide).empty());
}
