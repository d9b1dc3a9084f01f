#include <doctest.h>

#include <complex>

#include "mfel/cyclotomic.hpp"
#include "mfel/errors.hpp"
#include "mfel/qseries.hpp"
#include "mfel/zeta.hpp"

using namespace mfel;

TEST_SUITE_BEGIN("series");

TEST_CASE("cyclotomic polynomials") {
  CHECK(CycloField::get(1)->minpoly() == RatVec{Rat(-1), Rat(1)});
  CHECK(CycloField::get(2)->minpoly() == RatVec{Rat(1), Rat(1)});
  CHECK(CycloField::get(4)->minpoly() == RatVec{Rat(1), Rat(0), Rat(1)});
  CHECK(CycloField::get(6)->minpoly() == RatVec{Rat(1), Rat(-1), Rat(1)});
  CHECK(CycloField::get(12)->minpoly() == RatVec{Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)});
}

TEST_CASE("cyclotomic arithmetic") {
  auto f4 = CycloField::get(4);
  Cyclo i = Cyclo::root_pow(f4, 1);
  CHECK(i * i == Cyclo(Rat(-1)));
  CHECK(i * i.inverse() == Cyclo(Rat(1)));
  CHECK(Cyclo::root_pow(f4, 4) == Cyclo(Rat(1)));
  CHECK(Cyclo::root_pow(f4, -1) == i.inverse());

  auto f6 = CycloField::get(6);
  Cyclo w = Cyclo::root_pow(f6, 1);
  // Sum over all sixth roots of unity vanishes.
  Cyclo sum{Rat(0)};
  for (int k = 0; k < 6; ++k) sum = sum + Cyclo::root_pow(f6, k);
  CHECK(sum.zero());
  // Numeric embedding.
  auto z = w.eval();
  CHECK(std::abs(z - std::polar(1.0, 2 * M_PI / 6)) < 1e-12);
}

TEST_CASE("zeta field normal forms") {
  // (1 - s^2)/(1 - s) reduces to 1 + s.
  ZetaRF num({Cyclo(Rat(1)), Cyclo(Rat(0)), Cyclo(Rat(-1))}, {Cyclo(Rat(1))});
  ZetaRF den({Cyclo(Rat(1)), Cyclo(Rat(-1))}, {Cyclo(Rat(1))});
  ZetaRF q = num / den;
  ZetaRF expect({Cyclo(Rat(1)), Cyclo(Rat(1))}, {Cyclo(Rat(1))});
  CHECK(q == expect);

  CoefCtx ctx{CycloField::get(1), 2, 1, 1};
  // zeta^(1/2) = s with M = 2.
  CHECK(zeta_pow(ctx, Rat(1, 2)) == zeta_s_pow(1));
  CHECK(zeta_pow(ctx, Rat(-1)) == zeta_s_pow(-2));
  CHECK_THROWS_AS(one_minus_zeta_inv(ctx, Rat(0)), ZetaUnit);

  // (1+zeta)/(1-zeta) as built from field operations.
  ZetaRF z = zeta_pow(ctx, Rat(1));
  ZetaRF r = (zrf(Rat(1)) + z) * one_minus_zeta_inv(ctx, Rat(1));
  auto val = eval_zetarf(r, std::polar(1.0, 0.37));
  std::complex<double> zeta = std::polar(1.0, 2 * 0.37);
  CHECK(std::abs(val - (1.0 + zeta) / (1.0 - zeta)) < 1e-12);
}

TEST_CASE("regulated units and the regulator limit") {
  CoefCtx ctx{CycloField::get(2), 2, 2, 2};
  // 1/(1 - E^k) style units are finite objects before the limit.
  ZetaReg a = zreg_one_minus_inv(ctx, ZExp{Rat(0), Rat(1)});
  CHECK_THROWS_AS(regulator_limit(a), Error);
  // (1 - zeta^{0+eps}) * a = 1 for every eps, hence also in the limit.
  ZetaReg prod = (zreg(Rat(1)) - zreg_pow(ctx, ZExp{Rat(0), Rat(1)})) * a;
  CHECK(regulator_limit(prod) == zrf(Rat(1)));
  // The divergences of a and -a cancel.
  CHECK(regulator_limit(a + (-a)).zero());
  // A regulated pair whose singular parts cancel leaves the finite part:
  // 1/(1-E) - E/(1-E) = 1.
  ZetaReg b = zreg_pow(ctx, ZExp{Rat(0), Rat(1, 2)}) * a;
  ZetaReg diff = a - b;
  // diff = (1 - E^{1/2 * reg}) / (1 - E^{reg}) -> 1/2 at E -> 1 with k = 2, 1.
  CHECK(regulator_limit(diff) == zrf(Rat(1, 2)));
  CHECK_THROWS_AS(zreg_one_minus_inv(ctx, ZExp{Rat(0), Rat(0)}), ZetaUnit);
}

TEST_CASE("q-series arithmetic and truncation bookkeeping") {
  using S = QSeries<ZetaRF>;
  // (1 - q) * sum q^k = 1 through the truncation order.
  S geo(1, 5);
  for (long k = 0; k <= 5; ++k) geo.add_term(Rat(Int(k)), zrf(Rat(1)));
  S one_minus_q(1);
  one_minus_q.add_term(Rat(0), zrf(Rat(1)));
  one_minus_q.add_term(Rat(1), zrf(Rat(-1)));
  S prod = geo * one_minus_q;
  CHECK(prod.terms().size() == 1);
  CHECK(prod.terms().begin()->first == 0);
  CHECK(prod.trunc() == 5);

  // Laurent terms lower the reliable range of products.
  S laurent(1, 100);
  laurent.add_term(Rat(-1), zrf(Rat(1)));
  S shifted_prod = geo * laurent;
  CHECK(shifted_prod.trunc() == 4);  // 5 + ord(-1)

  // Regrade and integrality.
  S half(2, 10);
  half.add_term(Rat(1, 2), zrf(Rat(3)));
  CHECK_FALSE(half.integral_exponents());
  half.add_term(Rat(1, 2), zrf(Rat(-3)));
  CHECK(half.integral_exponents());
  CHECK(half.is_zero_series());

  S a(2, 8);
  a.add_term(Rat(1, 2), zrf(Rat(1)));
  S b = a.shifted(Rat(1, 2));
  CHECK(b.terms().begin()->first == 2);
  CHECK(b.trunc() == 9);
}

TEST_SUITE_END();
