#pragma once

#include <stdexcept>
#include <string>

namespace mfel {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DependentVectors : Error {
  explicit DependentVectors(const std::string& w = "vectors are linearly dependent") : Error(w) {}
};

struct NotIntegralDual : Error {
  explicit NotIntegralDual(const std::string& w = "functional is not integral on the edge vectors") : Error(w) {}
};

struct NotSimplicial : Error {
  explicit NotSimplicial(const std::string& w = "operation requires a simplicial multi-fan") : Error(w) {}
};

struct NotComplete : Error {
  explicit NotComplete(const std::string& w = "operation requires a complete multi-fan") : Error(w) {}
};

struct NonPolynomialResult : Error {
  explicit NonPolynomialResult(const std::string& w = "push-forward did not cancel to a polynomial") : Error(w) {}
};

struct IncompatibleTuple : Error {
  explicit IncompatibleTuple(const std::string& w = "restriction tuple is incompatible on overlaps") : Error(w) {}
};

struct NotInImage : Error {
  explicit NotInImage(const std::string& w = "tuple has no preimage in the Stanley-Reisner ring") : Error(w) {}
};

struct BoundaryMismatch : Error {
  explicit BoundaryMismatch(const std::string& w = "glued boundaries do not match") : Error(w) {}
};

struct NotInteriorVector : Error {
  explicit NotInteriorVector(const std::string& w = "vector is not in the relative interior of the cone") : Error(w) {}
};

struct PoleProximity : Error {
  explicit PoleProximity(const std::string& w = "evaluation point too close to a pole") : Error(w) {}
};

struct ZetaUnit : Error {
  explicit ZetaUnit(const std::string& w = "degenerate factor 1/(1-1) in zeta field") : Error(w) {}
};

struct UnsupportedRegime : Error {
  explicit UnsupportedRegime(const std::string& w = "parameters match no supported expansion regime") : Error(w) {}
};

struct WindowTooSmall : Error {
  explicit WindowTooSmall(const std::string& w = "character window boundary carries nonzero coefficients") : Error(w) {}
};

struct VectorOutsideSupport : Error {
  explicit VectorOutsideSupport(const std::string& w = "vector lies outside the support of the fan") : Error(w) {}
};

struct NotQCartier : Error {
  explicit NotQCartier(const std::string& w = "divisor is not Q-Cartier") : Error(w) {}
};

struct BadWeights : Error {
  explicit BadWeights(const std::string& w = "invalid weights") : Error(w) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& w = "input does not match the schema") : Error(w) {}
};

}  // namespace mfel
