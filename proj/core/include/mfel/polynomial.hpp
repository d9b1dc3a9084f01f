#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mfel/errors.hpp"
#include "mfel/rational.hpp"

namespace mfel {

inline bool is_zero(const Rat& r) { return r == 0; }

using Monomial = std::vector<int>;  ///< exponent vector

/// Graded lexicographic order on exponent vectors.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    long da = 0, db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

/// Sparse multivariate polynomial over a commutative coefficient ring C.
/// The ring must provide +, -, *, == and a free is_zero(). All monomials in
/// one polynomial share the same variable count.
template <class C>
class Poly {
 public:
  using Terms = std::map<Monomial, C, GradedLex>;

  Poly() : nvars_(0) {}
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, C c) {
    Poly p(nvars);
    if (!is_zero(c)) p.terms_.emplace(Monomial(nvars, 0), std::move(c));
    return p;
  }
  static Poly variable(std::size_t nvars, std::size_t i, C c) {
    Poly p(nvars);
    if (!is_zero(c)) {
      Monomial m(nvars, 0);
      m[i] = 1;
      p.terms_.emplace(std::move(m), std::move(c));
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  long degree() const {  // -1 for the zero polynomial
    long d = -1;
    for (const auto& [m, c] : terms_) {
      long t = 0;
      for (int e : m) t += e;
      if (t > d) d = t;
    }
    return d;
  }

  void add_term(const Monomial& m, const C& c) {
    if (is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  Poly operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }

  /// Product, optionally truncated to total degree <= cap (cap < 0: none).
  Poly mul(const Poly& o, long cap = -1) const {
    Poly r(nvars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m(nvars_);
        long d = 0;
        for (std::size_t i = 0; i < nvars_; ++i) {
          m[i] = ma[i] + mb[i];
          d += m[i];
        }
        if (cap >= 0 && d > cap) continue;
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Poly operator*(const Poly& o) const { return mul(o); }

  Poly scaled(const C& c) const {
    Poly r(nvars_);
    if (is_zero(c)) return r;
    for (const auto& [m, cc] : terms_) {
      C v = cc * c;
      if (!is_zero(v)) r.terms_.emplace(m, std::move(v));
    }
    return r;
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly truncated(long cap) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
      long d = 0;
      for (int e : m) d += e;
      if (d <= cap) r.terms_.emplace(m, c);
    }
    return r;
  }

  Poly homogeneous_component(long d) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
      long t = 0;
      for (int e : m) t += e;
      if (t == d) r.terms_.emplace(m, c);
    }
    return r;
  }

  /// Substitutes variable i by images[i]; all images share a variable count.
  Poly compose(const std::vector<Poly>& images, long cap = -1) const {
    if (terms_.empty()) return Poly(images.empty() ? 0 : images[0].nvars());
    std::size_t out_vars = images[0].nvars();
    Poly r(out_vars);
    for (const auto& [m, c] : terms_) {
      Poly term = Poly::constant(out_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) term = term.mul(images[i], cap);
      r = r + term;
    }
    return r;
  }

  C eval(const std::vector<C>& x, const C& one) const {
    C acc = one + (-one);  // zero in the right ring
    for (const auto& [m, c] : terms_) {
      C t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) t = t * x[i];
      acc = acc + t;
    }
    return acc;
  }

  std::string str(const std::string& var = "x") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m[i] > 0) {
          os << "*" << var << i;
          if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
  }

 private:
  std::size_t nvars_;
  Terms terms_;
};

template <class C>
bool is_zero(const Poly<C>& p) {
  return p.zero();
}

/// Division with remainder by a linear form: f = q * ell + r, where r has no
/// monomial divisible by the leading variable of ell. Requires C to support /.
template <class C>
std::pair<Poly<C>, Poly<C>> divide_by_linear(const Poly<C>& f, const Poly<C>& ell) {
  if (ell.degree() != 1) throw Error("divisor is not a linear form");
  // Leading variable: first variable with nonzero coefficient in graded-lex order.
  const auto& lt = *ell.terms().rbegin();
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < lt.first.size(); ++i)
    if (lt.first[i] == 1) pivot = i;
  const C& lc = lt.second;

  Poly<C> q(f.nvars()), r(f.nvars());
  Poly<C> work = f;
  while (!work.zero()) {
    // Largest term divisible by the pivot variable.
    bool reduced = false;
    for (auto it = work.terms().rbegin(); it != work.terms().rend(); ++it) {
      if (it->first[pivot] == 0) continue;
      Monomial qm = it->first;
      qm[pivot] -= 1;
      C qc = it->second / lc;
      q.add_term(qm, qc);
      Poly<C> qt(f.nvars());
      qt.add_term(qm, qc);
      work = work - qt.mul(ell);
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  r = work;
  return {q, r};
}

/// Linear form sum_j coeffs[j] * x_j as a rational polynomial.
inline Poly<Rat> linear_poly(const RatVec& coeffs) {
  Poly<Rat> p(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) p.add_term([&] {
      Monomial m(coeffs.size(), 0);
      m[j] = 1;
      return m;
    }(), coeffs[j]);
  return p;
}

}  // namespace mfel
