#pragma once

#include <string>

#include "qgem/errors.hpp"

namespace qgem {

/// Entanglement class of the evolved (noiseless) state.
enum class StateClass { FullySeparable, Biseparable, GHZ, GHZType };

const char* to_string(StateClass c);

struct Classification {
  StateClass state_class = StateClass::GHZType;
  std::string condition;  // the matched phase condition, human-readable
};

/// Symbolic classification of the parallel setup from its phase differences.
///
/// dphi3 = 0 (mod 2 pi) makes the state biseparable, additionally fully
/// separable when dphi2 = 0 (mod pi); dphi3 = pi (mod 2 pi) gives an exact
/// GHZ state; anything else is GHZ-type. Distances to the boundaries are
/// circular and compared against eps (> 0, finite, else InvalidTolerance).
Classification classify_parallel(double dphi2, double dphi3, double eps = 1e-9);

/// Linear-chain analogue. Biseparable when dphi3 = 0 (mod 2 pi), refined to
/// fully separable when additionally dphi2 + dphi4 = 0 (mod 2 pi); GHZ when
/// dphi3 = pi (mod 2 pi); GHZ-type otherwise.
Classification classify_linear(double dphi2, double dphi3, double dphi4,
                               double eps = 1e-9);

}  // namespace qgem
