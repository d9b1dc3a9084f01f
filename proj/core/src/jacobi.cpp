#include "mfel/jacobi.hpp"

#include <cmath>

#include "mfel/errors.hpp"

namespace mfel {

namespace {

void require_upper_half(Cx tau) {
  if (tau.imag() <= 0) throw Error("tau must lie in the upper half plane");
}

// Tail bound for the truncated products: all dropped factors are of the form
// (1 - c q^k) with |c| <= big; their joint deviation from 1 is bounded by
// exp(sum_{k>K} big |q|^k) - 1 <= 2 * big * |q|^{K+1} / (1 - |q|) once that
// quantity is below 1/2.
double product_tail(double big, double absq, int K, double value_modulus) {
  double s = big * std::pow(absq, K + 1) / (1.0 - absq);
  if (s >= 0.5) throw Error("truncation order too small for a certified bound");
  return 2.0 * s * value_modulus;
}

}  // namespace

NumericValue phi_big(Cx z, Cx tau, int K) {
  require_upper_half(tau);
  Cx q = cis(tau);
  Cx t = cis(z);
  Cx thalf = cis(z / 2.0);
  Cx value = thalf - 1.0 / thalf;
  Cx qk(1, 0);
  for (int k = 1; k <= K; ++k) {
    qk *= q;
    Cx d = 1.0 - qk;
    value *= (1.0 - t * qk) * (1.0 - qk / t) / (d * d);
  }
  double big = std::abs(t) + 1.0 / std::abs(t) + 2.0;
  return {value, product_tail(big, std::abs(q), K, std::abs(value))};
}

NumericValue phi_st_numeric(Cx z, Cx tau, Cx sigma, int K, double pole_guard) {
  require_upper_half(tau);
  Cx q = cis(tau);
  Cx t = cis(z);
  Cx zeta = cis(sigma);
  if (std::abs(1.0 - t) < pole_guard || std::abs(1.0 - zeta) < pole_guard)
    throw PoleProximity("phi_st evaluated too close to t = 1 or zeta = 1");
  Cx value = (1.0 - zeta * t) / ((1.0 - zeta) * (1.0 - t));
  Cx qk(1, 0);
  for (int k = 1; k <= K; ++k) {
    qk *= q;
    Cx d1 = 1.0 - zeta * qk, d2 = 1.0 - qk / zeta, d3 = 1.0 - t * qk, d4 = 1.0 - qk / t;
    if (std::abs(d1) < pole_guard || std::abs(d2) < pole_guard || std::abs(d3) < pole_guard ||
        std::abs(d4) < pole_guard)
      throw PoleProximity("phi_st product factor near zero");
    Cx n = 1.0 - qk;
    value *= n * n * (1.0 - zeta * t * qk) * (1.0 - qk / (zeta * t)) / (d1 * d2 * d3 * d4);
  }
  double at = std::abs(t), az = std::abs(zeta);
  double big = 2.0 + at + 1.0 / at + az + 1.0 / az + at * az + 1.0 / (at * az);
  return {value, product_tail(big, std::abs(q), K, std::abs(value))};
}

QSeries<ZetaRF> geometric_inverse(const CoefCtx& ctx, const Rat& d, long m, long N, long r) {
  if (m == 0) {
    // Closed form: no q-dependence at all.
    return QSeries<ZetaRF>::constant(one_minus_zeta_inv(ctx, d), r);
  }
  QSeries<ZetaRF> out(r, N * r);
  if (m > 0) {
    for (long k = 0; m * k <= N; ++k)
      out.add_term(Rat(Int(m * k)), zeta_pow(ctx, d * Rat(Int(k))));
  } else {
    for (long k = 1; -m * k <= N; ++k)
      out.add_term(Rat(Int(-m * k)), -zeta_pow(ctx, -d * Rat(Int(k))));
  }
  return out;
}

long phi_st_texp_lower_bound(long l, const Rat& a, long N) {
  if (a == 0) {
    // Negative t-exponents come from m < 0 (l > 0) at q-order |m|, or from
    // m > 0 (l < 0) at q-order m.
    return -std::abs(l) * N;
  }
  // q-order of the m-th term: a*m for m >= 0, |m|(1-a) for m < 0.
  Rat inv_neg = Rat(Int(N)) / (Rat(1) - a);
  Rat inv_pos = Rat(Int(N)) / a;
  long reach_neg = rat_floor(inv_neg).get_si();
  long reach_pos = rat_floor(inv_pos).get_si();
  return l > 0 ? -l * reach_neg : l * reach_pos;
}

TSeries phi_st_expand(const CoefCtx& ctx, long l, const Rat& a, const Rat& b, const Rat& d,
                      long N, long r, long t_lo, long t_hi) {
  if (l == 0 || a < 0 || a >= 1) throw UnsupportedRegime();
  TSeries out;
  long m_cyc = ctx.cyclo_order();
  Rat bm = b * Rat(Int(m_cyc));
  if (!is_integer(bm)) throw Error("character rotation outside (1/m)Z");
  long bnum = bm.get_num().get_si();
  auto alpha_pow = [&](long mm) {
    // alpha^m = e^{-2 pi i b m}
    return zrf(Cyclo::root_pow(ctx.cyclo ? ctx.cyclo : CycloField::get(1), -bnum * mm));
  };

  auto add = [&](long texp, const QSeries<ZetaRF>& qs) {
    if (texp < t_lo || texp > t_hi) return;
    auto it = out.find(texp);
    if (it == out.end())
      out.emplace(texp, qs);
    else
      it->second = it->second + qs;
  };

  auto div_floor = [](long x, long y) {
    long q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
  };
  auto div_ceil = [&](long x, long y) { return -div_floor(-x, y); };

  if (a == 0) {
    // l > 0: negative m only reach q-order |m|; positive m are capped by the
    // t-window. Mirrored for l < 0.
    long m_lo = l > 0 ? std::max(-N, div_ceil(t_lo, l)) : div_ceil(t_hi, l);
    long m_hi = l > 0 ? div_floor(t_hi, l) : std::min(N, div_floor(t_lo, l));
    for (long m = m_lo; m <= m_hi; ++m) {
      long texp = l * m;
      if (texp < t_lo || texp > t_hi) continue;
      QSeries<ZetaRF> inv = geometric_inverse(ctx, d, m, N, r);
      if (l < 0) inv = inv - QSeries<ZetaRF>::constant(zrf(Rat(1)), r);
      add(texp, inv.scaled(alpha_pow(m)));
    }
  } else {
    // q-order a*m (m >= 0) or |m|(1-a) (m < 0): finite m-range for fixed N.
    long m_hi = rat_floor(Rat(Int(N)) / a).get_si();
    long m_lo = -rat_floor(Rat(Int(N)) / (Rat(1) - a)).get_si() - 1;
    for (long m = m_lo; m <= m_hi; ++m) {
      long texp = l * m;
      if (texp < t_lo || texp > t_hi) continue;
      QSeries<ZetaRF> inv = geometric_inverse(ctx, d, m, N + std::abs(m) + 1, r);
      QSeries<ZetaRF> term = inv.shifted(a * Rat(Int(m))).truncated(Rat(Int(N)));
      add(texp, term.scaled(alpha_pow(m)));
    }
  }
  // Normalize truncations and drop empty rows.
  for (auto it = out.begin(); it != out.end();) {
    it->second = it->second.truncated(Rat(Int(N)));
    if (it->second.is_zero_series() && it->second.exact()) it = out.erase(it);
    else ++it;
  }
  return out;
}

TSeries phi_st_qexp(const CoefCtx& ctx, const Rat& a, const Rat& b, const Rat& d, long N, long r,
                    long t_lo, long t_hi) {
  return phi_st_expand(ctx, 1, a, b, d, N, r, t_lo, t_hi);
}

Cx eval_qseries(const QSeries<ZetaRF>& s, const CoefCtx& ctx, Cx tau, Cx sigma) {
  // q^e computed as e^{2 pi i tau e}: no branch ambiguity for fractional e.
  Cx sval = cis(sigma / static_cast<double>(ctx.M));
  Cx acc(0, 0);
  for (const auto& [k, c] : s.terms()) {
    double e = static_cast<double>(k) / static_cast<double>(s.r());
    acc += eval_zetarf(c, sval) * cis(tau * e);
  }
  return acc;
}

}  // namespace mfel
