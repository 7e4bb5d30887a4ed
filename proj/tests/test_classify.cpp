#include <doctest.h>

#include <cmath>
#include <limits>

#include "qgem/classify.hpp"
#include "qgem/errors.hpp"
#include "qgem/measures.hpp"
#include "test_helpers.hpp"

using namespace qgem;
using testutil::kPi;
using testutil::kTwoPi;

TEST_CASE("classify_parallel: exact branch points") {
  CHECK(classify_parallel(0.0, 0.0).state_class == StateClass::FullySeparable);
  CHECK(classify_parallel(kPi, 0.0).state_class == StateClass::FullySeparable);
  CHECK(classify_parallel(0.3, 0.0).state_class == StateClass::Biseparable);
  CHECK(classify_parallel(0.0, kPi).state_class == StateClass::GHZ);
  CHECK(classify_parallel(0.3, kPi).state_class == StateClass::GHZ);
  CHECK(classify_parallel(0.3, 2.5).state_class == StateClass::GHZType);
}

TEST_CASE("classify_parallel: periodicity of both conditions") {
  CHECK(classify_parallel(7.0 * kPi, 4.0 * kPi).state_class ==
        StateClass::FullySeparable);
  CHECK(classify_parallel(0.4, -2.0 * kPi).state_class ==
        StateClass::Biseparable);
  CHECK(classify_parallel(1.0, 3.0 * kPi).state_class == StateClass::GHZ);
  CHECK(classify_parallel(1.0, -kPi).state_class == StateClass::GHZ);
}

TEST_CASE("classify_parallel: tolerance window") {
  const double eps = 1e-9;
  // Within eps of a branch point classifies like the branch point.
  CHECK(classify_parallel(0.0, eps / 2.0, eps).state_class ==
        StateClass::FullySeparable);
  CHECK(classify_parallel(eps / 2.0, kPi - eps / 2.0, eps).state_class ==
        StateClass::GHZ);
  // Just outside lands in the generic class.
  CHECK(classify_parallel(0.3, kPi + 2.0 * eps, eps).state_class ==
        StateClass::GHZType);
  CHECK(classify_parallel(0.3, 2.0 * eps, eps).state_class ==
        StateClass::GHZType);
  // A wide tolerance folds everything into the first matching branch.
  CHECK(classify_parallel(0.3, 0.2, 0.5).state_class ==
        StateClass::FullySeparable);
}

TEST_CASE("classify_linear: separability needs the outer phases to cancel") {
  CHECK(classify_linear(0.5, 0.0, -0.5).state_class ==
        StateClass::FullySeparable);
  CHECK(classify_linear(0.5, 0.0, kTwoPi - 0.5).state_class ==
        StateClass::FullySeparable);
  CHECK(classify_linear(0.0, 0.0, 0.0).state_class ==
        StateClass::FullySeparable);
  CHECK(classify_linear(0.5, 0.0, 0.7).state_class == StateClass::Biseparable);
  CHECK(classify_linear(0.5, kPi, 0.7).state_class == StateClass::GHZ);
  CHECK(classify_linear(0.5, 1.3, 0.7).state_class == StateClass::GHZType);
}

TEST_CASE("classify: invalid tolerance and invalid deltas") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(classify_parallel(0.0, 0.0, 0.0), InvalidTolerance);
  CHECK_THROWS_AS(classify_parallel(0.0, 0.0, -1.0), InvalidTolerance);
  CHECK_THROWS_AS(classify_parallel(0.0, 0.0, nan), InvalidTolerance);
  CHECK_THROWS_AS(classify_parallel(0.0, 0.0, inf), InvalidTolerance);
  CHECK_THROWS_AS(classify_linear(0.0, 0.0, 0.0, -1.0), InvalidTolerance);
  CHECK_THROWS_AS(classify_parallel(nan, 0.0), InvalidParameter);
  CHECK_THROWS_AS(classify_parallel(0.0, inf), InvalidParameter);
  CHECK_THROWS_AS(classify_linear(0.0, nan, 0.0), InvalidParameter);
  CHECK_THROWS_AS(classify_linear(0.0, 0.0, inf), InvalidParameter);
}

TEST_CASE("classify: condition strings name the matched rule") {
  CHECK(classify_parallel(0.0, 0.0).condition ==
        "dphi3 = 0 (mod 2 pi) and dphi2 = 0 (mod pi)");
  CHECK(classify_parallel(0.3, 0.0).condition == "dphi3 = 0 (mod 2 pi)");
  CHECK(classify_parallel(0.3, kPi).condition == "dphi3 = pi (mod 2 pi)");
  CHECK(!classify_parallel(0.3, 2.5).condition.empty());
  CHECK(classify_linear(0.5, 0.0, -0.5).condition ==
        "dphi3 = 0 (mod 2 pi) and dphi2 + dphi4 = 0 (mod 2 pi)");
}

TEST_CASE("classify: labels round-trip through to_string") {
  CHECK(std::string(to_string(StateClass::FullySeparable)) ==
        "fully-separable");
  CHECK(std::string(to_string(StateClass::Biseparable)) == "biseparable");
  CHECK(std::string(to_string(StateClass::GHZ)) == "ghz");
  CHECK(std::string(to_string(StateClass::GHZType)) == "ghz-type");
}

TEST_CASE("classify agrees with the entanglement measures on a grid") {
  // Spot checks tying the symbolic classes to the measures they predict.
  for (double dphi2 : {0.0, kPi / 3.0, kPi}) {
    const PhaseSet sep = PhaseSet::from_deltas(SetupKind::Parallel, dphi2, 0.0);
    const Classification c = classify_parallel(dphi2, 0.0);
    const double tangle = three_tangle_closed(SetupKind::Parallel, sep);
    CHECK(tangle <= 1e-9);
    if (c.state_class == StateClass::FullySeparable) {
      const DensityMatrix rho = decohered_state(sep, 0.0, 2.5);
      for (Bipartition part :
           {Bipartition::A_BC, Bipartition::B_AC, Bipartition::C_AB}) {
        CHECK(negativity(rho, part) <= 1e-9);
      }
    }
  }
  const PhaseSet ghz = PhaseSet::from_deltas(SetupKind::Parallel, 0.7, kPi);
  CHECK(classify_parallel(0.7, kPi).state_class == StateClass::GHZ);
  CHECK(three_tangle_closed(SetupKind::Parallel, ghz) ==
        doctest::Approx(1.0).epsilon(1e-9));
}
