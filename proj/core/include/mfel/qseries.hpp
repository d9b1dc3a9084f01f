#pragma once

#include <limits>
#include <map>

#include "mfel/rational.hpp"

namespace mfel {

/// Truncated series in q with exponents in (1/r)Z, bounded below. Keys are
/// exponents scaled by r. `trunc` (same units) marks how far the coefficients
/// are exact: entries with key <= trunc are complete, nothing is known above.
template <class C>
class QSeries {
 public:
  static constexpr long kExact = std::numeric_limits<long>::max() / 4;

  QSeries() : r_(1), trunc_(kExact) {}
  explicit QSeries(long r, long trunc = kExact) : r_(r), trunc_(trunc) {}

  static QSeries constant(C c, long r = 1) {
    QSeries s(r);
    if (!is_zero(c)) s.c_.emplace(0, std::move(c));
    return s;
  }
  /// c * q^(num/den); den must divide r.
  static QSeries monomial(C c, const Rat& e, long r) {
    QSeries s(r);
    s.add_term(e, c);
    return s;
  }

  long r() const { return r_; }
  long trunc() const { return trunc_; }
  const std::map<long, C>& terms() const { return c_; }
  bool empty() const { return c_.empty(); }

  /// Truncation as a rational exponent (kExact stays symbolic).
  bool exact() const { return trunc_ >= kExact / 2; }

  void set_trunc_exponent(const Rat& e) {
    Rat scaled = e * r_;
    trunc_ = rat_floor(scaled).get_si();
  }

  void add_term(const Rat& e, const C& c) {
    if (is_zero(c)) return;
    Rat scaled = e * r_;
    if (!is_integer(scaled)) throw Error("exponent not representable at this grading");
    long key = scaled.get_num().get_si();
    if (key > trunc_) return;
    auto it = c_.find(key);
    if (it == c_.end()) {
      c_.emplace(key, c);
    } else {
      it->second = it->second + c;
      if (is_zero(it->second)) c_.erase(it);
    }
  }

  Rat exponent_of(long key) const { return Rat(Int(key)) / Rat(Int(r_)); }

  /// Known lower bound (in key units of the target grading r) of the order.
  long order_bound() const { return c_.empty() ? (exact() ? kExact : trunc_ + 1) : c_.begin()->first; }

  QSeries regrade(long new_r) const {
    if (new_r == r_) return *this;
    if (new_r % r_ != 0) throw Error("grading refinement must be a multiple");
    long f = new_r / r_;
    QSeries out(new_r, exact() ? kExact : trunc_ * f);
    for (const auto& [k, v] : c_) out.c_.emplace(k * f, v);
    return out;
  }

  QSeries operator+(const QSeries& o) const {
    long nr = static_cast<long>(lcm(Int(r_), Int(o.r_)).get_si());
    QSeries a = regrade(nr), b = o.regrade(nr);
    QSeries out(nr, std::min(a.trunc_, b.trunc_));
    out.c_ = a.c_;
    for (const auto& [k, v] : b.c_) {
      auto it = out.c_.find(k);
      if (it == out.c_.end()) {
        out.c_.emplace(k, v);
      } else {
        it->second = it->second + v;
        if (is_zero(it->second)) out.c_.erase(it);
      }
    }
    out.drop_unknown();
    return out;
  }

  QSeries operator-() const {
    QSeries out(r_, trunc_);
    for (const auto& [k, v] : c_) out.c_.emplace(k, -v);
    return out;
  }
  QSeries operator-(const QSeries& o) const { return *this + (-o); }

  QSeries operator*(const QSeries& o) const {
    long nr = static_cast<long>(lcm(Int(r_), Int(o.r_)).get_si());
    QSeries a = regrade(nr), b = o.regrade(nr);
    // The unknown tail of each factor pollutes exponents above
    // trunc(factor) + ord(other factor).
    long ta = a.exact() ? kExact : a.trunc_ + b.order_bound();
    long tb = b.exact() ? kExact : b.trunc_ + a.order_bound();
    QSeries out(nr, std::min(std::min(ta, tb), kExact));
    for (const auto& [ka, va] : a.c_)
      for (const auto& [kb, vb] : b.c_) {
        if (ka + kb > out.trunc_) continue;
        C prod = va * vb;
        if (is_zero(prod)) continue;
        auto it = out.c_.find(ka + kb);
        if (it == out.c_.end()) {
          out.c_.emplace(ka + kb, std::move(prod));
        } else {
          it->second = it->second + prod;
          if (is_zero(it->second)) out.c_.erase(it);
        }
      }
    return out;
  }

  QSeries scaled(const C& c) const {
    QSeries out(r_, trunc_);
    if (is_zero(c)) return out;
    for (const auto& [k, v] : c_) {
      C prod = v * c;
      if (!is_zero(prod)) out.c_.emplace(k, std::move(prod));
    }
    return out;
  }

  /// Multiplication by q^e.
  QSeries shifted(const Rat& e) const {
    Rat scaled_e = e * r_;
    if (!is_integer(scaled_e)) throw Error("shift not representable at this grading");
    long d = scaled_e.get_num().get_si();
    QSeries out(r_, exact() ? kExact : trunc_ + d);
    for (const auto& [k, v] : c_) out.c_.emplace(k + d, v);
    return out;
  }

  /// Caps the reliable range (tightening only).
  QSeries truncated(const Rat& e) const {
    QSeries out = *this;
    Rat scaled = e * r_;
    long t = rat_floor(scaled).get_si();
    if (t < out.trunc_) out.trunc_ = t;
    out.drop_unknown();
    return out;
  }

  bool is_zero_series() const { return c_.empty(); }

  bool operator==(const QSeries& o) const {
    long nr = static_cast<long>(lcm(Int(r_), Int(o.r_)).get_si());
    QSeries a = regrade(nr), b = o.regrade(nr);
    return a.c_ == b.c_;
  }

  /// All exponents integral?
  bool integral_exponents() const {
    for (const auto& [k, v] : c_)
      if (k % r_ != 0) return false;
    return true;
  }

 private:
  void drop_unknown() {
    for (auto it = c_.begin(); it != c_.end();) {
      if (it->first > trunc_) it = c_.erase(it);
      else ++it;
    }
  }

  long r_;
  long trunc_;
  std::map<long, C> c_;
};

}  // namespace mfel
