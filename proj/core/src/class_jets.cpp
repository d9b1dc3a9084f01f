#include <algorithm>
#include <sstream>

#include "mfel/errors.hpp"
#include "mfel/genus.hpp"
#include "mfel/lattice.hpp"

namespace mfel {

namespace {

using JQ = QSeries<JetPoly>;

JetPoly jet_const(ZetaRF c) { return JetPoly::constant(1, std::move(c)); }

JetPoly lift_rat_poly(const Poly<Rat>& p) {
  JetPoly out(p.nvars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, zrf(c));
  return out;
}

// exp(s * x) as a 1-variable jet to degree D.
JetPoly exp_jet(const Rat& s, long D) {
  JetPoly out(1);
  Rat coef(1);
  for (long j = 0; j <= D; ++j) {
    if (j > 0) coef *= s / Rat(Int(j));
    Monomial m{static_cast<int>(j)};
    out.add_term(m, zrf(coef));
  }
  return out;
}

// Power-series inverse in x of a jet with invertible constant term.
JetPoly invert_jet(const JetPoly& a, long D) {
  ZetaRF c0;
  for (const auto& [m, c] : a.terms())
    if (m[0] == 0) c0 = c;
  if (is_zero(c0)) throw Error("jet not invertible");
  ZetaRF c0inv = c0.inverse();
  JetPoly inv = jet_const(c0inv);
  // Newton-free iteration: inv_{k} built degree by degree.
  for (long deg = 1; deg <= D; ++deg) {
    // coefficient of x^deg in a*inv must vanish
    ZetaRF acc;
    JetPoly prod = a.mul(inv, deg);
    for (const auto& [m, c] : prod.terms())
      if (m[0] == deg) acc = c;
    if (!is_zero(acc)) {
      Monomial m{static_cast<int>(deg)};
      inv.add_term(m, -(acc * c0inv));
    }
  }
  return inv;
}

JQ jq_mul(const JQ& a, const JQ& b, long D) {
  long nr = a.r();
  JQ bb = b.regrade(nr == b.r() ? nr : static_cast<long>(lcm(Int(nr), Int(b.r())).get_si()));
  JQ aa = a.regrade(bb.r());
  long ta = aa.exact() ? JQ::kExact : aa.trunc() + bb.order_bound();
  long tb = bb.exact() ? JQ::kExact : bb.trunc() + aa.order_bound();
  JQ out(aa.r(), std::min(std::min(ta, tb), JQ::kExact));
  for (const auto& [ka, va] : aa.terms())
    for (const auto& [kb, vb] : bb.terms()) {
      if (ka + kb > out.trunc()) continue;
      JetPoly prod = va.mul(vb, D);
      if (!is_zero(prod))
        out.add_term(Rat(Int(ka + kb)) / Rat(Int(out.r())), prod);
    }
  return out;
}

JQ jq_scale_series(const JQ& a, const QSeries<ZetaRF>& s, long D) {
  JQ lifted(s.r(), s.trunc());
  for (const auto& [k, c] : s.terms())
    lifted.add_term(Rat(Int(k)) / Rat(Int(s.r())), jet_const(c));
  return jq_mul(a, lifted, D);
}

// x * phi_st(-x/(2 pi i) + f1 tau - f2, tau, d sigma) as a jet to degree D
// and q-order N, in one formal variable. chi = e^{2 pi i f2}.
JQ jet_factor(const CoefCtx& ctx, const Rat& f1, const Rat& f2, const Rat& d, long D, long N) {
  long r = ctx.qden;
  auto field = ctx.cyclo ? ctx.cyclo : CycloField::get(1);
  Rat f2m = f2 * Rat(Int(field->order()));
  if (!is_integer(f2m)) throw Error("character rotation outside (1/m)Z");
  Cyclo chi_inv = Cyclo::root_pow(field, -f2m.get_num().get_si());
  Cyclo chi = Cyclo::root_pow(field, f2m.get_num().get_si());
  ZetaRF zd = zeta_pow(ctx, d);
  ZetaRF zdi = zeta_pow(ctx, -d);

  // Scalar prefactor 1/(1-zeta^d) prod_k (1-q^k)^2 / ((1-zeta^d q^k)(1-zeta^-d q^k)).
  QSeries<ZetaRF> pre = QSeries<ZetaRF>::constant(one_minus_zeta_inv(ctx, d), r);
  for (long k = 1; k <= N; ++k) {
    QSeries<ZetaRF> omq(r);
    omq.add_term(Rat(0), zrf(Rat(1)));
    omq.add_term(Rat(Int(k)), zrf(Rat(-1)));
    pre = (pre * omq * omq * geometric_inverse(ctx, d, k, N, r) *
           geometric_inverse(ctx, -d, k, N, r))
              .truncated(Rat(Int(N)));
  }

  JetPoly em = exp_jet(Rat(-1), D);  // e^{-x}
  JetPoly ep = exp_jet(Rat(1), D);   // e^{+x}

  // Head: x (1 - zeta^d xi) / (1 - xi), xi = chi^{-1} e^{-x} q^{f1}.
  JQ head(r);
  JetPoly x_poly = JetPoly::variable(1, 0, zrf(Rat(1)));
  if (f1 > 0) {
    JQ one_minus(r);
    one_minus.add_term(Rat(0), jet_const(zrf(Rat(1))));
    one_minus.add_term(f1, em.scaled(-(zd * zrf(chi_inv))));
    JQ inv(r, N * r);
    JetPoly emj = jet_const(zrf(Rat(1)));
    for (long j = 0; f1 * Rat(Int(j)) <= Rat(Int(N)); ++j) {
      if (j > 0) emj = emj.mul(em, D);
      inv.add_term(f1 * Rat(Int(j)), emj.scaled(zrf(Cyclo::root_pow(field, -f2m.get_num().get_si() * j))));
    }
    head = jq_mul(one_minus, inv, D);
    JQ xw(r);
    xw.add_term(Rat(0), x_poly);
    head = jq_mul(head, xw, D);
  } else {
    bool chi_trivial = chi == Cyclo(Rat(1));
    JetPoly a = jet_const(zrf(Rat(1))) - em.scaled(zd * zrf(chi_inv));  // 1 - zeta^d chi^{-1} e^{-x}
    JetPoly headjet(1);
    if (chi_trivial) {
      // x / (1 - e^{-x}) is regular: invert (1 - e^{-x})/x.
      JetPoly b(1);
      Rat coef(1);
      for (long j = 0; j <= D; ++j) {
        coef = Rat(1);
        for (long t = 2; t <= j + 1; ++t) coef *= Rat(Int(t));
        Monomial m{static_cast<int>(j)};
        JetPoly term(1);
        term.add_term(m, zrf(Rat(j % 2 == 0 ? 1 : -1) / coef));
        b = b + term;
      }
      headjet = a.mul(invert_jet(b, D), D);
    } else {
      JetPoly c = jet_const(zrf(Rat(1))) - em.scaled(zrf(chi_inv));  // 1 - chi^{-1} e^{-x}
      headjet = x_poly.mul(a.mul(invert_jet(c, D), D), D);
    }
    head = JQ(r);
    head.add_term(Rat(0), headjet);
  }

  // Tail: prod_k (1 - zeta^d xi q^k)(1 - zeta^-d xi^{-1} q^k)
  //              / ((1 - xi q^k)(1 - xi^{-1} q^k)).
  JQ tail(r);
  tail.add_term(Rat(0), jet_const(zrf(Rat(1))));
  for (long k = 1; k <= N; ++k) {
    JQ num1(r), num2(r);
    num1.add_term(Rat(0), jet_const(zrf(Rat(1))));
    num1.add_term(Rat(Int(k)) + f1, em.scaled(-(zd * zrf(chi_inv))));
    num2.add_term(Rat(0), jet_const(zrf(Rat(1))));
    num2.add_term(Rat(Int(k)) - f1, ep.scaled(-(zdi * zrf(chi))));
    JQ den1(r, N * r), den2(r, N * r);
    JetPoly emj = jet_const(zrf(Rat(1))), epj = jet_const(zrf(Rat(1)));
    for (long j = 0; (Rat(Int(k)) + f1) * Rat(Int(j)) <= Rat(Int(N)); ++j) {
      if (j > 0) emj = emj.mul(em, D);
      den1.add_term((Rat(Int(k)) + f1) * Rat(Int(j)),
                    emj.scaled(zrf(Cyclo::root_pow(field, -f2m.get_num().get_si() * j))));
    }
    for (long j = 0; (Rat(Int(k)) - f1) * Rat(Int(j)) <= Rat(Int(N)); ++j) {
      if (j > 0) epj = epj.mul(ep, D);
      den2.add_term((Rat(Int(k)) - f1) * Rat(Int(j)),
                    epj.scaled(zrf(Cyclo::root_pow(field, f2m.get_num().get_si() * j))));
    }
    tail = jq_mul(jq_mul(jq_mul(jq_mul(tail, num1, D), num2, D), den1, D), den2, D)
               .truncated(Rat(Int(N)));
  }

  JQ out = jq_mul(head, tail, D);
  out = jq_scale_series(out, pre, D);
  return out.truncated(Rat(Int(N)));
}

// Substitutes the single jet variable by a linear form in the ambient frame.
JQ substitute_linear(const JQ& a, const RatVec& form, long D) {
  std::vector<JetPoly> images{lift_rat_poly(linear_poly(form))};
  JQ out(a.r(), a.trunc());
  for (const auto& [k, c] : a.terms()) {
    JetPoly img = c.compose(images, D);
    if (!is_zero(img)) out.add_term(Rat(Int(k)) / Rat(Int(a.r())), img);
  }
  return out;
}

Poly<Rat> cone_denominator(const std::vector<RatVec>& duals, int rank) {
  Poly<Rat> u = Poly<Rat>::constant(rank, Rat(1));
  for (const auto& d : duals) u = u * linear_poly(d);
  return u;
}

// Exact division by a linear form, certified through the reliable degree.
JetPoly divide_certified(const JetPoly& f, const RatVec& ell, long reliable) {
  auto [q, r] = divide_by_linear(f, lift_rat_poly(linear_poly(ell)));
  if (!r.truncated(reliable).zero())
    throw NonPolynomialResult("localized sum failed to cancel its denominator");
  return q;
}

// sum_i scale_i * premul * jet_i / prod(dens_i), certified polynomial and
// truncated to degree out_cap. Jets are reliable to degree `reliable`.
JQ localized_sum(const std::vector<JQ>& jets, const std::vector<Rat>& scales,
                 const std::vector<std::vector<RatVec>>& dens, const Poly<Rat>& premul,
                 long reliable, long out_cap, long r, long N) {
  std::vector<Poly<Rat>> den_polys;
  long den_deg = 0;
  for (const auto& d : dens) {
    Poly<Rat> p = Poly<Rat>::constant(premul.nvars(), Rat(1));
    for (const auto& ell : d) p = p * linear_poly(ell);
    den_deg += static_cast<long>(d.size());
    den_polys.push_back(p);
  }

  long lifted_reliable = reliable;
  {
    long min_extra = premul.degree() < 0 ? 0 : premul.degree();
    min_extra += den_deg - (dens.empty() ? 0 : static_cast<long>(dens[0].size()));
    lifted_reliable += min_extra;
  }

  JQ num(r, N * r);
  for (std::size_t i = 0; i < jets.size(); ++i) {
    Poly<Rat> mult = premul;
    for (std::size_t j = 0; j < dens.size(); ++j)
      if (j != i) mult = mult * den_polys[j];
    JetPoly multz = lift_rat_poly(mult.scaled(scales[i]));
    JQ term(jets[i].r(), jets[i].trunc());
    for (const auto& [k, c] : jets[i].terms()) {
      JetPoly prod = c.mul(multz, lifted_reliable);
      if (!is_zero(prod)) term.add_term(Rat(Int(k)) / Rat(Int(jets[i].r())), prod);
    }
    num = num + term;
  }

  JQ out(r, num.trunc());
  for (const auto& [k, c] : num.terms()) {
    JetPoly cur = c;
    long rel = lifted_reliable;
    for (const auto& d : dens)
      for (const auto& ell : d) {
        cur = divide_certified(cur, ell, rel);
        rel -= 1;
      }
    cur = cur.truncated(out_cap);
    if (!is_zero(cur)) out.add_term(Rat(Int(k)) / Rat(Int(num.r())), cur);
  }
  return out;
}

}  // namespace

ClassJet class_restriction_jet(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi,
                               const CoefCtx& ctx, const Simplex& i, long D, long N) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  auto vecs = v.vectors(fan, i);
  auto duals = dual_basis(vecs);
  auto group = saturate_and_quotient(i, vecs);

  JQ acc(ctx.qden, N * ctx.qden);
  for (const auto& h1 : group.elements())
    for (const auto& h2 : group.elements()) {
      JQ term(ctx.qden);
      term.add_term(Rat(0), JetPoly::constant(fan.rank, zrf(Rat(1))));
      for (std::size_t idx = 0; idx < i.size(); ++idx) {
        const Rat& d = xi.d[i[idx]];
        JQ factor = jet_factor(ctx, h1.f[idx], h2.f[idx], d, D, N);
        factor = substitute_linear(factor, duals[idx], D);
        ZetaRF prefactor = zeta_pow(ctx, d * h1.f[idx]);
        JQ scaled(factor.r(), factor.trunc());
        for (const auto& [k, c] : factor.terms()) {
          JetPoly p = c.scaled(prefactor);
          if (!is_zero(p)) scaled.add_term(Rat(Int(k)) / Rat(Int(factor.r())), p);
        }
        term = jq_mul(term, scaled, D);
      }
      acc = acc + term.truncated(Rat(Int(N)));
    }
  if (!acc.integral_exponents())
    throw Error("class jet has fractional q-exponents after the group sums");
  return ClassJet{i, D, acc};
}

QSeries<JetPoly> epsilon_genus(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi,
                               const CoefCtx& ctx, long D, long N) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  if (!is_complete(fan, v)) throw NotComplete();

  std::vector<JQ> jets;
  std::vector<Rat> scales;
  std::vector<std::vector<RatVec>> dens;
  for (const auto& mc : fan.maximal) {
    if (mc.weight() == 0) continue;
    auto vecs = v.vectors(fan, mc.verts);
    auto duals = dual_basis(vecs);
    auto group = saturate_and_quotient(mc.verts, vecs);
    jets.push_back(class_restriction_jet(fan, v, xi, ctx, mc.verts, D + fan.rank, N).s);
    scales.push_back(Rat(mc.weight()) / Rat(Int(group.order())));
    dens.push_back(std::vector<RatVec>(duals.begin(), duals.end()));
  }
  Poly<Rat> one = Poly<Rat>::constant(fan.rank, Rat(1));
  return localized_sum(jets, scales, dens, one, D + fan.rank, D, ctx.qden, N);
}

QSeries<JetPoly> ch_genus(const GenusSeries& g, long D) {
  QSeries<JetPoly> acc(g.ctx.qden, g.N * g.ctx.qden);
  for (const auto& [u, s] : g.c) {
    // t^{-u} -> exp(-<u, y>)
    RatVec form(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) form[j] = -Rat(u[j]);
    Poly<Rat> lin = linear_poly(form);
    Poly<Rat> expo = Poly<Rat>::constant(u.size(), Rat(1));
    Poly<Rat> pw = Poly<Rat>::constant(u.size(), Rat(1));
    Rat fact(1);
    for (long j = 1; j <= D; ++j) {
      pw = pw.mul(lin, D);
      fact *= Rat(Int(j));
      expo = expo + pw.scaled(Rat(1) / fact);
    }
    JetPoly ez = lift_rat_poly(expo);
    for (const auto& [k, c] : s.terms()) {
      JetPoly p = ez.scaled(c);
      if (!is_zero(p)) acc.add_term(Rat(Int(k)) / Rat(Int(s.r())), p);
    }
  }
  return acc;
}

CheckReport check_class_invariance(const BirationalMorphism& m, const Divisor& xi_target, long D,
                                   long N) {
  require_valid_morphism(m);
  CheckReport rep;
  rep.name = "class-invariance";
  Divisor xi_source = pullback_divisor(m, xi_target);
  CoefCtx ctx = make_ctx({JobPiece{&m.target, &m.target_v, &xi_target},
                          JobPiece{&m.source, &m.source_v, &xi_source}});
  int rank = m.target.rank;

  bool all_equal = true;
  std::ostringstream os;
  for (const auto& tc : m.target.maximal) {
    ClassJet target_jet = class_restriction_jet(m.target, m.target_v, xi_target, ctx, tc.verts,
                                                D, N);
    auto tduals = dual_basis(m.target_v.vectors(m.target, tc.verts));
    auto tgroup = saturate_and_quotient(tc.verts, m.target_v.vectors(m.target, tc.verts));

    std::vector<JQ> jets;
    std::vector<Rat> scales;
    std::vector<std::vector<RatVec>> dens;
    for (std::size_t si : m.fiber(tc.verts)) {
      const Simplex& sv = m.source.maximal[si].verts;
      auto sduals = dual_basis(m.source_v.vectors(m.source, sv));
      auto sgroup = saturate_and_quotient(sv, m.source_v.vectors(m.source, sv));
      jets.push_back(
          class_restriction_jet(m.source, m.source_v, xi_source, ctx, sv, D + rank, N).s);
      scales.push_back(Rat(Int(tgroup.order())) / Rat(Int(sgroup.order())));
      dens.push_back(std::vector<RatVec>(sduals.begin(), sduals.end()));
    }
    Poly<Rat> premul = cone_denominator(std::vector<RatVec>(tduals.begin(), tduals.end()), rank);
    JQ pushed = localized_sum(jets, scales, dens, premul, D + rank, D, ctx.qden, N);

    // Compare coefficientwise through q^N at degree <= D.
    JQ diff = (pushed - target_jet.s).truncated(Rat(Int(N)));
    bool equal = true;
    for (const auto& [k, c] : diff.terms())
      if (!is_zero(c.truncated(D))) equal = false;
    if (!equal) {
      all_equal = false;
      os << " mismatch over cone {";
      for (int x : tc.verts) os << x << " ";
      os << "}";
    }
  }
  rep.pass = all_equal;
  rep.details = all_equal ? "rho_* of source jets equals target jets" : os.str();
  return rep;
}

}  // namespace mfel
