#pragma once

#include <complex>
#include <map>

#include "mfel/qseries.hpp"
#include "mfel/zeta.hpp"

namespace mfel {

using Cx = std::complex<double>;

inline Cx cis(double x) { return {std::cos(2.0 * M_PI * x), std::sin(2.0 * M_PI * x)}; }
inline Cx cis(const Cx& x) { return std::exp(Cx(0, 2.0 * M_PI) * x); }

/// Numeric value with a certified truncation bound for the dropped tail.
struct NumericValue {
  Cx value;
  double bound;
};

/// Phi(z, tau) = (t^(1/2) - t^(-1/2)) prod_{k>=1} (1-t q^k)(1-t^{-1} q^k)/(1-q^k)^2,
/// truncated at k = K. Requires Im(tau) > 0.
NumericValue phi_big(Cx z, Cx tau, int K);

/// phi_st(z, tau, sigma) = -Phi(z+sigma) / (Phi(z) Phi(sigma)), evaluated from
/// its product form. Throws PoleProximity near zeros of the denominators.
NumericValue phi_st_numeric(Cx z, Cx tau, Cx sigma, int K, double pole_guard = 1e-12);

/// Truncated expansion of 1/(1 - zeta^d q^m):
///   m > 0: sum_k zeta^{dk} q^{mk};  m < 0: -zeta^{-d} q^{-m} sum_k zeta^{-dk} q^{-mk};
///   m = 0: the closed zeta-field element (ZetaUnit when d = 0).
/// The result is graded with denominator r and exact through q^N.
QSeries<ZetaRF> geometric_inverse(const CoefCtx& ctx, const Rat& d, long m, long N, long r = 1);

/// Series in the formal character t with q-series coefficients.
using TSeries = std::map<long, QSeries<ZetaRF>>;

/// Exact q-expansion of phi_st(l z + a tau - b, tau, d sigma) as a t-Laurent
/// series, t = e^{2 pi i z}: the three admissible regimes are
///   a in (0,1), l != 0:  sum_m alpha^m t^{lm} q^{am} / (1 - zeta^d q^m)
///   a = 0, l > 0:        sum_m alpha^m t^{lm} / (1 - zeta^d q^m)
///   a = 0, l < 0:        sum_m alpha^m t^{lm} (1/(1 - zeta^d q^m) - 1)
/// with alpha = e^{-2 pi i b}. Terms with t-exponent outside [t_lo, t_hi] are
/// dropped; q-exponents are kept through N with grading r. Throws
/// UnsupportedRegime outside the cases above and ZetaUnit on unit denominators.
TSeries phi_st_expand(const CoefCtx& ctx, long l, const Rat& a, const Rat& b, const Rat& d,
                      long N, long r, long t_lo, long t_hi);

/// Smallest t-exponent phi_st_expand can produce at q-order <= N.
long phi_st_texp_lower_bound(long l, const Rat& a, long N);

/// The l = +1 surface of phi_st_expand.
TSeries phi_st_qexp(const CoefCtx& ctx, const Rat& a, const Rat& b, const Rat& d, long N, long r,
                    long t_lo, long t_hi);

/// Numeric evaluation of a zeta-coefficient q-series at concrete parameters;
/// sigma enters through s = e^{2 pi i sigma / M}.
Cx eval_qseries(const QSeries<ZetaRF>& s, const CoefCtx& ctx, Cx tau, Cx sigma);

}  // namespace mfel
