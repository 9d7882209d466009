#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace scenuc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Values with |x| >= kInfSentinel are treated as infinite when reading
/// numeric file formats; the writer emits the strings "inf"/"-inf" instead.
inline constexpr double kInfSentinel = 1e30;

inline bool is_finite_bound(double x) { return x > -kInfSentinel && x < kInfSentinel; }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedProblem : Error {
  using Error::Error;
};
struct NumericalFailure : Error {
  using Error::Error;
};
struct UnboundedProblem : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct InvalidCase : Error {
  using Error::Error;
};
struct InvalidSpec : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InfeasibleBase : Error {
  using Error::Error;
};
struct FirstStageInfeasible : Error {
  using Error::Error;
};
struct DisconnectedNetwork : Error {
  using Error::Error;
};
struct SingularSusceptanceMatrix : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace scenuc
