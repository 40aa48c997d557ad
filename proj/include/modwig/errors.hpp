#pragma once

#include <stdexcept>
#include <string>

namespace modwig {

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values whose dimensions (d or n) do not agree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be Hermitian is not, beyond tolerance.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// A matrix required to be positive semidefinite has a negative eigenvalue
/// beyond tolerance.
class NotPSD : public Error {
 public:
  using Error::Error;
};

/// The stated precondition of a factorization does not hold on the input.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

/// A vector required to be nonzero is zero.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

/// A map on operators is neither multiplicative nor antimultiplicative.
class NotJordan : public Error {
 public:
  using Error::Error;
};

/// No anchor pair (y, z) with <phi(y (x) y) z, z> near 1 exists; the map does
/// not preserve rank-one projections.
class NoAnchor : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds the dense-solve limit.
class SizeLimit : public Error {
 public:
  using Error::Error;
};

/// An operator required to be an A-isometry is not.
class NotIsometry : public Error {
 public:
  using Error::Error;
};

/// A table-backed oracle was queried at an element it does not contain.
class OracleMiss : public Error {
 public:
  using Error::Error;
};

/// The transform violates |[Tf,Tf']| = |[f,f']| on a probed pair. Carries the
/// worst observed deviation.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_ = 0.0;
};

/// The coefficient algebra is the scalars (d = 1); the decomposition engine
/// requires d > 1.
class DimensionOne : public Error {
 public:
  using Error::Error;
};

/// The projection-measure equations admit no single linear map within
/// tolerance.
class InconsistentMeasure : public Error {
 public:
  using Error::Error;
};

/// A document failed to parse or is structurally invalid.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace modwig
