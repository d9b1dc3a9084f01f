#include "mfel/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "mfel/errors.hpp"

namespace mfel {

namespace {

// Dense univariate polynomials over Q, low to high, no trailing zeros.

void poly_trim(RatVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatVec poly_mul(const RatVec& a, const RatVec& b) {
  if (a.empty() || b.empty()) return {};
  RatVec r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// Quotient and remainder of a by b (b nonzero).
std::pair<RatVec, RatVec> poly_divmod(RatVec a, const RatVec& b) {
  RatVec q;
  poly_trim(a);
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, Rat(0));
  Rat lead = b.back();
  for (std::size_t i = a.size(); i-- >= b.size();) {
    Rat f = a[i] / lead;
    q[i - b.size() + 1] = f;
    if (f != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= f * b[j];
    if (i == 0) break;
  }
  poly_trim(a);
  return {q, a};
}

RatVec cyclotomic_poly(long m) {
  // x^m - 1 divided by the cyclotomic polynomials of the proper divisors.
  RatVec num(m + 1, Rat(0));
  num[0] = -1;
  num[m] = 1;
  for (long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto [q, r] = poly_divmod(num, cyclotomic_poly(d));
    if (!r.empty()) throw Error("internal: cyclotomic division left a remainder");
    num = q;
  }
  return num;
}

}  // namespace

CycloField::CycloField(long m) : m_(m), minpoly_(cyclotomic_poly(m)) {}

std::shared_ptr<const CycloField> CycloField::get(long m) {
  if (m < 1) throw Error("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const CycloField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<const CycloField>(new CycloField(m));
  cache[m] = f;
  return f;
}

Cyclo Cyclo::root_pow(const std::shared_ptr<const CycloField>& f, long k) {
  long m = f->order();
  k %= m;
  if (k < 0) k += m;
  RatVec x(k + 1, Rat(0));
  x[k] = 1;
  auto [q, r] = poly_divmod(x, f->minpoly());
  r.resize(f->degree(), Rat(0));
  return Cyclo(f, r);
}

bool Cyclo::zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclo::is_rational(Rat* value) const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  if (value) *value = c_.empty() ? Rat(0) : c_[0];
  return true;
}

namespace {

// Promotes both operands into a common field.
std::pair<RatVec, RatVec> align(const Cyclo& a, const Cyclo& b,
                                std::shared_ptr<const CycloField>& field) {
  field = a.field() ? a.field() : b.field();
  if (a.field() && b.field() && a.field()->order() != b.field()->order())
    throw Error("cyclotomic elements from different fields");
  std::size_t deg = field ? field->degree() : 1;
  RatVec ca = a.coeffs(), cb = b.coeffs();
  ca.resize(std::max<std::size_t>(deg, 1), Rat(0));
  cb.resize(std::max<std::size_t>(deg, 1), Rat(0));
  return {ca, cb};
}

}  // namespace

Cyclo Cyclo::operator+(const Cyclo& o) const {
  std::shared_ptr<const CycloField> f;
  auto [a, b] = align(*this, o, f);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return Cyclo(f, std::move(a));
}

Cyclo Cyclo::operator-() const {
  RatVec a = c_;
  for (auto& x : a) x = -x;
  return Cyclo(field_, std::move(a));
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  std::shared_ptr<const CycloField> f;
  auto [a, b] = align(*this, o, f);
  RatVec prod = poly_mul(a, b);
  if (f) {
    auto [q, r] = poly_divmod(prod, f->minpoly());
    r.resize(f->degree(), Rat(0));
    return Cyclo(f, std::move(r));
  }
  prod.resize(1, Rat(0));
  return Cyclo(f, std::move(prod));
}

Cyclo Cyclo::inverse() const {
  if (zero()) throw Error("inverse of zero cyclotomic element");
  if (!field_) return Cyclo(Rat(1) / c_[0]);
  // Extended Euclid: s * this + t * minpoly = gcd = constant.
  RatVec r0 = field_->minpoly(), r1 = c_;
  poly_trim(r1);
  RatVec s0{}, s1{Rat(1)};
  while (!r1.empty() && r1.size() > 1) {
    auto [q, r2] = poly_divmod(r0, r1);
    RatVec s2 = s0;
    RatVec qs1 = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs1.size()), Rat(0));
    for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw Error("element not invertible modulo the cyclotomic polynomial");
  // r1 is a nonzero constant: inverse = s1 / r1.
  RatVec inv = s1;
  for (auto& x : inv) x /= r1[0];
  auto [q, rem] = poly_divmod(inv, field_->minpoly());
  rem.resize(field_->degree(), Rat(0));
  return Cyclo(field_, std::move(rem));
}

bool Cyclo::operator==(const Cyclo& o) const {
  std::shared_ptr<const CycloField> f;
  auto [a, b] = align(*this, o, f);
  return a == b;
}

std::complex<double> Cyclo::eval() const {
  if (!field_) return {c_[0].get_d(), 0.0};
  double ang = 2.0 * M_PI / static_cast<double>(field_->order());
  std::complex<double> w(std::cos(ang), std::sin(ang));
  std::complex<double> acc(0.0, 0.0), p(1.0, 0.0);
  for (const auto& x : c_) {
    acc += x.get_d() * p;
    p *= w;
  }
  return acc;
}

std::string Cyclo::str() const {
  std::ostringstream os;
  Rat v;
  if (is_rational(&v)) {
    os << v;
    return os.str();
  }
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i];
    if (i > 0) os << "*w^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.str(); }

}  // namespace mfel
