#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <string>

#include "mfel/cyclotomic.hpp"
#include "mfel/ratfunc.hpp"

namespace mfel {

/// Coefficient context fixed once per computation: the cyclotomic order m for
/// character values, the root order M making every power of zeta an integer
/// power of s = zeta^(1/M), the q-exponent denominator, and the grading of
/// the regulator variable E = zeta^(eps/reg_den).
struct CoefCtx {
  std::shared_ptr<const CycloField> cyclo;
  long M = 1;
  long qden = 1;
  long reg_den = 1;

  long cyclo_order() const { return cyclo ? cyclo->order() : 1; }
};

/// Element of Q(omega_m)(s), s = zeta^(1/M).
using ZetaRF = RF<Cyclo>;
/// Element of Q(omega_m)(s)(E), E = zeta^(eps/reg_den): the regulated ring
/// used where a divisor coefficient vanishes and 1/(1 - zeta^0) must stay
/// formal until the global cancellation has happened.
using ZetaReg = RF<ZetaRF>;

inline ZetaRF zrf(Rat r) { return ZetaRF(Cyclo(std::move(r))); }
inline ZetaRF zrf(Cyclo c) { return ZetaRF(std::move(c)); }
inline ZetaReg zreg(ZetaRF z) { return ZetaReg(std::move(z)); }
inline ZetaReg zreg(Rat r) { return ZetaReg(zrf(std::move(r))); }

/// s^k.
ZetaRF zeta_s_pow(long k);
/// zeta^e; requires e*M integral.
ZetaRF zeta_pow(const CoefCtx& ctx, const Rat& e);
/// 1/(1 - zeta^e); throws ZetaUnit at e = 0.
ZetaRF one_minus_zeta_inv(const CoefCtx& ctx, const Rat& e);

bool zetarf_is_rational(const ZetaRF& z, Rat* value = nullptr);
std::string zetarf_str(const ZetaRF& z);
/// Evaluates with s -> s_value, omega_m -> exp(2 pi i/m). Throws PoleProximity
/// when the denominator modulus drops below the guard.
std::complex<double> eval_zetarf(const ZetaRF& z, std::complex<double> s_value,
                                 double pole_guard = 1e-12);

/// Exponent of zeta carrying a regulator multiple: zeta^(a + b*eps).
struct ZExp {
  Rat a;
  Rat b;
};

/// zeta^(a + b*eps) as a regulated element; b*reg_den must be integral.
ZetaReg zreg_pow(const CoefCtx& ctx, const ZExp& e);
/// 1/(1 - zeta^(a + b*eps)); ZetaUnit only when a = b = 0.
ZetaReg zreg_one_minus_inv(const CoefCtx& ctx, const ZExp& e);
/// The regulator limit E -> 1. Throws Error on a genuine pole (cancellation
/// failure).
ZetaRF regulator_limit(const ZetaReg& z);

std::ostream& operator<<(std::ostream& os, const ZetaRF& z);

}  // namespace mfel
