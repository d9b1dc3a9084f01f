#include "mfel/zeta.hpp"

#include <sstream>

#include "mfel/errors.hpp"

namespace mfel {

ZetaRF zeta_s_pow(long k) { return ZetaRF::var_pow(k); }

ZetaRF zeta_pow(const CoefCtx& ctx, const Rat& e) {
  Rat scaled = e * Rat(Int(ctx.M));
  if (!is_integer(scaled)) throw Error("zeta exponent outside (1/M)Z");
  return zeta_s_pow(scaled.get_num().get_si());
}

ZetaRF one_minus_zeta_inv(const CoefCtx& ctx, const Rat& e) {
  if (e == 0) throw ZetaUnit();
  return (zrf(Rat(1)) - zeta_pow(ctx, e)).inverse();
}

bool zetarf_is_rational(const ZetaRF& z, Rat* value) {
  Cyclo c;
  if (!z.is_constant(&c)) return false;
  return c.is_rational(value);
}

std::string zetarf_str(const ZetaRF& z) {
  auto poly_str = [](const std::vector<Cyclo>& p) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << p[i].str() << ")";
      if (i > 0) os << "*s^" << i;
    }
    if (first) os << "0";
    return os.str();
  };
  Cyclo dc;
  if (z.is_constant(nullptr) || z.den().size() == 1) {
    Rat dv;
    if (!z.den().empty() && z.den()[0].is_rational(&dv) && dv == 1) return poly_str(z.num());
  }
  return "(" + poly_str(z.num()) + ") / (" + poly_str(z.den()) + ")";
}

std::complex<double> eval_zetarf(const ZetaRF& z, std::complex<double> s, double pole_guard) {
  auto eval_poly = [&](const std::vector<Cyclo>& p) {
    std::complex<double> acc(0, 0), pw(1, 0);
    for (const auto& c : p) {
      acc += c.eval() * pw;
      pw *= s;
    }
    return acc;
  };
  std::complex<double> d = eval_poly(z.den());
  if (std::abs(d) < pole_guard) throw PoleProximity("zeta-field denominator near zero");
  return eval_poly(z.num()) / d;
}

ZetaReg zreg_pow(const CoefCtx& ctx, const ZExp& e) {
  Rat breg = e.b * Rat(Int(ctx.reg_den));
  if (!is_integer(breg)) throw Error("regulator exponent outside (1/reg_den)Z");
  long k = breg.get_num().get_si();
  ZetaRF base = zeta_pow(ctx, e.a);
  // base * E^k
  ZetaReg ek = ZetaReg::var_pow(k);
  return ek * zreg(base);
}

ZetaReg zreg_one_minus_inv(const CoefCtx& ctx, const ZExp& e) {
  if (e.a == 0 && e.b == 0) throw ZetaUnit();
  return (zreg(Rat(1)) - zreg_pow(ctx, e)).inverse();
}

ZetaRF regulator_limit(const ZetaReg& z) { return z.at_one(); }

std::ostream& operator<<(std::ostream& os, const ZetaRF& z) { return os << zetarf_str(z); }

}  // namespace mfel
