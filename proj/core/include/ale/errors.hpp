#pragma once

#include <stdexcept>
#include <string>

namespace ale {

// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ALE_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                     \
  public:                                                         \
    explicit Name(const std::string& msg) : Error(msg) {}         \
  }

// polynomial core
ALE_DEFINE_ERROR(ZeroPolynomialError);
ALE_DEFINE_ERROR(NonConvergenceError);
ALE_DEFINE_ERROR(AmbiguousClusteringError);

// intersection theory
ALE_DEFINE_ERROR(SingularSystemError);
ALE_DEFINE_ERROR(NonIntegralSolutionError);
ALE_DEFINE_ERROR(UnsupportedTypeError);

// twistor lines
ALE_DEFINE_ERROR(NonPositiveDiscriminantError);

// solvers
ALE_DEFINE_ERROR(DivergenceError);
ALE_DEFINE_ERROR(RankDeficientError);

// elliptic machinery
ALE_DEFINE_ERROR(RootCollisionError);
ALE_DEFINE_ERROR(QuadratureNonConvergenceError);
ALE_DEFINE_ERROR(PathThroughBranchPointError);

// metric checks
ALE_DEFINE_ERROR(DomainError);
ALE_DEFINE_ERROR(GridTooSmallError);

// configuration
ALE_DEFINE_ERROR(ParseError);

#undef ALE_DEFINE_ERROR

}  // namespace ale
