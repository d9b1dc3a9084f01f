#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mfel/errors.hpp"

namespace mfel {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Floor of a rational number.
inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

/// Fractional part in [0,1).
inline Rat frac_mod1(const Rat& r) {
  Rat f = r - Rat(rat_floor(r));
  return f;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const RatVec& a, const IntVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

/// Parses "p/q" or "p". Throws SchemaError on malformed input.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw SchemaError("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw SchemaError("malformed rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

/// Rescales a nonzero integer vector to its primitive representative.
inline IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw Error("primitive() of the zero vector");
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

/// Clears denominators: scales a rational vector to a primitive integer vector.
inline IntVec clear_denominators(const RatVec& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(den);
    out[i] = s.get_num();
  }
  return primitive(out);
}

}  // namespace mfel
