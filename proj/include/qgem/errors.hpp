#pragma once

#include <stdexcept>
#include <string>

namespace qgem {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix input is empty, non-square, or contains non-finite entries.
class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

/// Matrix deviates from its adjoint by more than the rejection threshold.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// State vector norm deviates from 1 beyond tolerance.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A physical parameter is out of range (non-positive mass, negative rate, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Two superposition branches coincide: a pair distance is exactly zero.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// A pair distance came out negative and unphysical mode is off.
class UnphysicalGeometry : public Error {
 public:
  using Error::Error;
};

/// A phase array does not respect the degeneracy pattern of its setup.
class DegeneracyViolation : public Error {
 public:
  using Error::Error;
};

/// Classification tolerance is zero, negative, or non-finite.
class InvalidTolerance : public Error {
 public:
  using Error::Error;
};

/// A sweep specification is internally inconsistent.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Threshold search: the detection predicate is already false at gamma = 0.
class NoDetectionAtZero : public Error {
 public:
  using Error::Error;
};

/// Threshold search: the predicate flips back to true after turning false.
class NonMonotonePredicate : public Error {
 public:
  using Error::Error;
};

/// An internal numerical identity failed (complex residue, out-of-range value).
class NumericalConsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace qgem
