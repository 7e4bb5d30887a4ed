#include "qgem/classify.hpp"

#include <cmath>
#include <numbers>

namespace qgem {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Circular distance from x to the nearest point congruent to target (mod period).
double wrapped_distance(double x, double target, double period) {
  return std::abs(std::remainder(x - target, period));
}

void require_finite_delta(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be finite");
  }
}

void require_tolerance(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidTolerance("classification tolerance must be positive and finite");
  }
}

}  // namespace

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::FullySeparable: return "fully-separable";
    case StateClass::Biseparable: return "biseparable";
    case StateClass::GHZ: return "ghz";
    case StateClass::GHZType: return "ghz-type";
  }
  return "?";
}

Classification classify_parallel(double dphi2, double dphi3, double eps) {
  require_tolerance(eps);
  require_finite_delta(dphi2, "dphi2");
  require_finite_delta(dphi3, "dphi3");
  if (wrapped_distance(dphi3, 0.0, kTwoPi) <= eps) {
    if (wrapped_distance(dphi2, 0.0, kPi) <= eps) {
      return {StateClass::FullySeparable,
              "dphi3 = 0 (mod 2 pi) and dphi2 = 0 (mod pi)"};
    }
    return {StateClass::Biseparable, "dphi3 = 0 (mod 2 pi)"};
  }
  if (wrapped_distance(dphi3, kPi, kTwoPi) <= eps) {
    return {StateClass::GHZ, "dphi3 = pi (mod 2 pi)"};
  }
  return {StateClass::GHZType, "no separability or GHZ condition met"};
}

Classification classify_linear(double dphi2, double dphi3, double dphi4,
                               double eps) {
  require_tolerance(eps);
  require_finite_delta(dphi2, "dphi2");
  require_finite_delta(dphi3, "dphi3");
  require_finite_delta(dphi4, "dphi4");
  if (wrapped_distance(dphi3, 0.0, kTwoPi) <= eps) {
    if (wrapped_distance(dphi2 + dphi4, 0.0, kTwoPi) <= eps) {
      return {StateClass::FullySeparable,
              "dphi3 = 0 (mod 2 pi) and dphi2 + dphi4 = 0 (mod 2 pi)"};
    }
    return {StateClass::Biseparable, "dphi3 = 0 (mod 2 pi)"};
  }
  if (wrapped_distance(dphi3, kPi, kTwoPi) <= eps) {
    return {StateClass::GHZ, "dphi3 = pi (mod 2 pi)"};
  }
  return {StateClass::GHZType, "no separability or GHZ condition met"};
}

}  // namespace qgem
