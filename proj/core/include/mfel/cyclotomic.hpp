#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mfel/rational.hpp"

namespace mfel {

/// Shared context for arithmetic in the m-th cyclotomic field Q(omega_m):
/// elements are residue polynomials modulo the m-th cyclotomic polynomial.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> get(long m);

  long order() const { return m_; }
  std::size_t degree() const { return minpoly_.size() - 1; }
  const RatVec& minpoly() const { return minpoly_; }  ///< monic, low to high

 private:
  explicit CycloField(long m);
  long m_;
  RatVec minpoly_;
};

/// Element of a cyclotomic field. A null field tags plain rationals, which
/// promote on contact with genuine cyclotomic values.
class Cyclo {
 public:
  Cyclo() : c_{Rat(0)} {}
  explicit Cyclo(Rat r) : c_{std::move(r)} {}
  Cyclo(std::shared_ptr<const CycloField> f, RatVec c) : field_(std::move(f)), c_(std::move(c)) {}

  /// omega_m^k in the given field.
  static Cyclo root_pow(const std::shared_ptr<const CycloField>& f, long k);

  const std::shared_ptr<const CycloField>& field() const { return field_; }
  const RatVec& coeffs() const { return c_; }

  bool zero() const;
  bool is_rational(Rat* value = nullptr) const;
  Cyclo one_like() const { return Cyclo(Rat(1)); }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo operator-(const Cyclo& o) const { return *this + (-o); }
  Cyclo operator*(const Cyclo& o) const;
  Cyclo inverse() const;  ///< throws Error on zero
  Cyclo operator/(const Cyclo& o) const { return *this * o.inverse(); }
  bool operator==(const Cyclo& o) const;

  std::complex<double> eval() const;  ///< omega_m -> exp(2 pi i / m)
  std::string str() const;

 private:
  std::shared_ptr<const CycloField> field_;
  RatVec c_;
};

inline bool is_zero(const Cyclo& c) { return c.zero(); }

std::ostream& operator<<(std::ostream& os, const Cyclo& c);

}  // namespace mfel
