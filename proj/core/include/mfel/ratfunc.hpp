#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mfel/errors.hpp"
#include "mfel/rational.hpp"

namespace mfel {

/// Dense univariate polynomial helpers over a field F (low to high order).
/// F needs +, -, *, inverse(), zero(), ==.
namespace upoly {

template <class F>
void trim(std::vector<F>& p) {
  while (!p.empty() && p.back().zero()) p.pop_back();
}

template <class F>
std::vector<F> mul(const std::vector<F>& a, const std::vector<F>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<F> r(a.size() + b.size() - 1, F());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  trim(r);
  return r;
}

template <class F>
std::vector<F> add(const std::vector<F>& a, const std::vector<F>& b) {
  std::vector<F> r = a;
  if (r.size() < b.size()) r.resize(b.size(), F());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  trim(r);
  return r;
}

template <class F>
std::pair<std::vector<F>, std::vector<F>> divmod(std::vector<F> a, const std::vector<F>& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  std::vector<F> q(a.size() - b.size() + 1, F());
  F lead_inv = b.back().inverse();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    if (!a[i].zero()) {
      F f = a[i] * lead_inv;
      q[i - b.size() + 1] = f;
      for (std::size_t j = 0; j < b.size(); ++j)
        a[i - b.size() + 1 + j] = a[i - b.size() + 1 + j] - f * b[j];
    }
    if (i == 0) break;
  }
  trim(a);
  return {q, a};
}

template <class F>
std::vector<F> gcd(std::vector<F> a, std::vector<F> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    F inv = a.back().inverse();
    for (auto& c : a) c = c * inv;
  }
  return a;
}

template <class F>
F eval_at_one(const std::vector<F>& p) {
  F acc{};
  for (const auto& c : p) acc = acc + c;
  return acc;
}

}  // namespace upoly

/// Rational function in one variable over the field F, kept in canonical form
/// (coprime, monic denominator). Default-constructs to zero.
template <class F>
class RF {
 public:
  RF() : num_{}, den_{make_one()} {}
  explicit RF(F c) : den_{make_one()} {
    if (!c.zero()) num_.push_back(std::move(c));
  }
  RF(std::vector<F> num, std::vector<F> den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  /// x^k, k possibly negative.
  static RF var_pow(long k) {
    if (k >= 0) {
      std::vector<F> num(k + 1, F());
      num[k] = make_one();
      return RF(std::move(num), {make_one()});
    }
    std::vector<F> den(-k + 1, F());
    den[-k] = make_one();
    return RF(std::vector<F>{make_one()}, std::move(den));
  }

  bool zero() const { return num_.empty(); }
  const std::vector<F>& num() const { return num_; }
  const std::vector<F>& den() const { return den_; }
  bool is_constant(F* value = nullptr) const {
    if (den_.size() != 1 || num_.size() > 1) return false;
    if (value) *value = num_.empty() ? F() : num_[0] * den_[0].inverse();
    return true;
  }

  RF operator+(const RF& o) const {
    auto num = upoly::add(upoly::mul(num_, o.den_), upoly::mul(o.num_, den_));
    if (num.empty()) return RF();
    return RF(std::move(num), upoly::mul(den_, o.den_));
  }
  RF operator-() const {
    RF r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }
  RF operator-(const RF& o) const { return *this + (-o); }
  RF operator*(const RF& o) const {
    auto num = upoly::mul(num_, o.num_);
    if (num.empty()) return RF();
    return RF(std::move(num), upoly::mul(den_, o.den_));
  }
  RF inverse() const {
    if (zero()) throw Error("inverse of zero rational function");
    return RF(den_, num_);
  }
  RF operator/(const RF& o) const { return *this * o.inverse(); }
  bool operator==(const RF& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Value at x = 1; throws Error on a pole there.
  F at_one() const {
    F d = upoly::eval_at_one(den_);
    if (d.zero()) throw Error("rational function has a pole at the regulator limit");
    return upoly::eval_at_one(num_) * d.inverse();
  }

  RF one_like() const { return RF(F().one_like()); }

 private:
  static F make_one() { return F().one_like(); }

  void normalize() {
    upoly::trim(num_);
    upoly::trim(den_);
    if (den_.empty()) throw Error("zero denominator");
    if (num_.empty()) {
      den_ = {make_one()};
      return;
    }
    auto g = upoly::gcd(num_, den_);
    if (g.size() > 1) {
      num_ = upoly::divmod(num_, g).first;
      den_ = upoly::divmod(den_, g).first;
    }
    F inv = den_.back().inverse();
    for (auto& c : num_) c = c * inv;
    for (auto& c : den_) c = c * inv;
  }

  std::vector<F> num_, den_;
};

template <class F>
bool is_zero(const RF<F>& r) {
  return r.zero();
}

}  // namespace mfel
