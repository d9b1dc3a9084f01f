#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mfel/multifan.hpp"
#include "mfel/polynomial.hpp"

namespace mfel {

/// Element of the Stanley-Reisner ring H_T^*(Delta, V) with rational
/// coefficients: a polynomial in one generator per ray index, kept reduced
/// modulo the monomials whose support is not a simplex.
using SRClass = Poly<Rat>;

/// Rational function on the ambient lattice with a denominator kept as a
/// factored product of linear forms (the only denominators the localization
/// ever produces). The factored form is canonical: factors are primitive
/// integer covectors with positive leading entry, and every factor that
/// divides the numerator has been cancelled.
struct RationalFunctionND {
  Poly<Rat> num;
  std::map<RatVec, int> den;  ///< normalized linear form -> multiplicity

  bool is_polynomial() const { return den.empty(); }
  /// Numerator as polynomial; throws NonPolynomialResult if a denominator remains.
  const Poly<Rat>& polynomial() const;
  Rat eval(const RatVec& x) const;
  bool operator==(const RationalFunctionND& o) const = default;

  static RationalFunctionND from_poly(Poly<Rat> p) { return RationalFunctionND{std::move(p), {}}; }
};

RationalFunctionND rf_add(const RationalFunctionND& a, const RationalFunctionND& b);
RationalFunctionND rf_mul_poly(const RationalFunctionND& a, const Poly<Rat>& p);
/// Cancels denominator factors dividing the numerator; establishes the canonical form.
RationalFunctionND rf_normalize(Poly<Rat> num, const std::vector<RatVec>& den_factors,
                                const Rat& scale);

/// Drops every monomial whose support is not a simplex of the fan.
SRClass reduce(const MultiFan& fan, const Poly<Rat>& raw);

/// Product in the Stanley-Reisner ring.
SRClass sr_mul(const MultiFan& fan, const SRClass& a, const SRClass& b);

/// The divisor sum_i <u, v_i> x_i representing u in degree two.
SRClass embed_linear(const MultiFan& fan, const EdgeVectorSet& v, const RatVec& u);

SRClass divisor_class(const MultiFan& fan, const Divisor& xi);

/// Restriction iota_I^*: substitute x_i by the dual covector u_i^I for i in I
/// and by 0 elsewhere. The result is a polynomial in the ambient dual
/// coordinates (one fixed frame for every simplex).
Poly<Rat> restrict_class(const MultiFan& fan, const EdgeVectorSet& v, const SRClass& x,
                         const Simplex& i);

/// iota_J^{K*} expressed in the ambient frame: substitutes the coordinates by
/// the projection attached to J. Applies to restrictions of classes.
Poly<Rat> restrict_frame(const MultiFan& fan, const EdgeVectorSet& v, const Poly<Rat>& p,
                         const Simplex& j);

/// The covector u^I(xi) = iota_I^*(xi) of a divisor at a maximal simplex.
RatVec divisor_restriction(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi,
                           const Simplex& i);

/// Localization-formula push-forward to a point:
///   pi_*(x) = sum_I w(I) iota_I^*(x) / (|H_I| prod_{i in I} u_i^I).
/// With expect_polynomial the result must cancel to a polynomial
/// (NonPolynomialResult otherwise); completeness guarantees that it does.
RationalFunctionND pushforward_point(const MultiFan& fan, const EdgeVectorSet& v,
                                     const SRClass& x);
Poly<Rat> pushforward_point_poly(const MultiFan& fan, const EdgeVectorSet& v, const SRClass& x);

/// T-Cartier test: every iota_I^*(xi) pairs integrally with the lattice.
bool is_T_Cartier(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi);

/// Per-maximal-cone restrictions (indexed like MultiFan::maximal).
using RestrictionTuple = std::vector<Poly<Rat>>;

RestrictionTuple tuple_of(const MultiFan& fan, const EdgeVectorSet& v, const SRClass& x);

/// Checks the overlap compatibility required of elements of the image of
/// the joint restriction; throws IncompatibleTuple if violated.
void require_compatible(const MultiFan& fan, const EdgeVectorSet& v, const RestrictionTuple& t);

/// Solves for a preimage of a compatible tuple; throws IncompatibleTuple or
/// NotInImage.
SRClass from_tuple(const MultiFan& fan, const EdgeVectorSet& v, const RestrictionTuple& t);

}  // namespace mfel
