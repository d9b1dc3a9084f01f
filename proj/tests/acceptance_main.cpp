// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and truncation orders are pinned here.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "mfel/errors.hpp"
#include "mfel/lattice.hpp"

using namespace mfel;
using namespace mfel::testutil;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome ok() { return {true, ""}; }
Outcome fail(const std::string& why) { return {false, why}; }

#define REQUIRE_NEAR(a, b, tol, what)                                             \
  do {                                                                            \
    double err_ = std::abs((a) - (b));                                            \
    if (!(err_ < (tol))) return fail(std::string(what) + ": err=" + std::to_string(err_)); \
  } while (0)

// ---------------------------------------------------------------- 1
Outcome engine_cross_check() {
  struct Entry {
    std::string name;
    MultiFan fan;
    EdgeVectorSet v;
  };
  std::vector<Entry> entries;
  entries.push_back({"P1", p1(), prim(p1())});
  entries.push_back({"P2", p2(), prim(p2())});
  entries.push_back({"F1", hirzebruch(1), prim(hirzebruch(1))});
  {
    auto [wf, wv] = weighted_projective({Int(1), Int(2)});
    entries.push_back({"P(1,2) primitive", wf, EdgeVectorSet::primitive(wf)});
    entries.push_back({"P(1,2) rescaled", wf, wv});
  }
  entries.push_back({"P1 x2", multiplicity_multifan(p1(), 2), prim(p1())});

  GenusParams p;
  p.tau = Cx(0, 5.0);
  p.K = 40;
  for (const auto& e : entries) {
    Divisor xi = canonical0(e.fan);
    CoefCtx ctx = ctx_for(e.fan, e.v, xi);
    GenusSeries g = genus_char_formula_auto(e.fan, e.v, xi, ctx, 4, 6, 3);
    if (g.window > 6) return fail(e.name + ": window exceeded 6");
    for (unsigned s = 0; s < 3; ++s) {
      auto w = sample_w(e.fan.rank, s);
      Cx exact = g.eval(w, p.tau, p.sigma);
      NumericValue direct = genus_numeric(e.fan, e.v, xi, w, p);
      REQUIRE_NEAR(exact, direct.value, 1e-8, e.name);
    }
  }
  return ok();
}

// ---------------------------------------------------------------- 2
Outcome integrality() {
  auto [fan, vprime] = weighted_projective({Int(1), Int(2)});
  Divisor xi = canonical0(fan);
  CoefCtx ctx = ctx_for(fan, vprime, xi);
  long N = 4;

  // Pre-sum pieces of the definition-side expansion carry q^{1/2}-graded
  // coefficients; they must cancel after the group sums.
  FanGeometry geom = FanGeometry::build(fan, vprime);
  bool saw_half = false;
  for (std::size_t ci = 0; ci < geom.cones.size(); ++ci) {
    const auto& cd = geom.cones[ci];
    for (std::size_t h1 = 0; h1 < cd.group.order(); ++h1)
      for (std::size_t h2 = 0; h2 < cd.group.order(); ++h2) {
        TSeries t = along_cone_pair_term(geom, xi, ctx, ci, h1, h2, IntVec{Int(2)}, N, -8, 8);
        for (const auto& [e, s] : t)
          if (!s.integral_exponents()) saw_half = true;
      }
  }
  if (!saw_half) return fail("no fractional-grade pieces encountered before the sums");

  AlongSeries a = genus_along_v_exact(fan, vprime, xi, ctx, IntVec{Int(1)}, N, 10);
  if (!a.integral_exponents()) return fail("definition-side series kept fractional exponents");
  if (a.c.empty()) return fail("definition-side series is empty");

  GenusSeries g = genus_char_formula_auto(fan, vprime, xi, ctx, 4, 8, N);
  if (!g.integral_exponents()) return fail("character series kept fractional exponents");
  return ok();
}

// ---------------------------------------------------------------- 3
Outcome local_identity() {
  long N = 4;
  {
    BirationalMorphism m = p2_star();
    Divisor xi = canonical0(m.target);
    Divisor xis = pullback_divisor(m, xi);
    CoefCtx ctx = make_ctx({JobPiece{&m.target, &m.target_v, &xi},
                            JobPiece{&m.source, &m.source_v, &xis}});
    std::vector<IntVec> us = {{Int(2), Int(3)}, {Int(-1), Int(3)}, {Int(4), Int(-7)}};
    for (const Simplex& j : std::vector<Simplex>{{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
      for (const auto& u : us)
        if (!check_Bn(m, xi, j, u, ctx, N)) return fail("star subdivision face mismatch");
    }
  }
  {
    BirationalMorphism m = p12_rescale();
    Divisor xi;
    xi.d = {Rat(1), Rat(1, 2)};
    Divisor xis = pullback_divisor(m, xi);
    CoefCtx ctx = make_ctx({JobPiece{&m.target, &m.target_v, &xi},
                            JobPiece{&m.source, &m.source_v, &xis}});
    std::vector<IntVec> us = {{Int(5)}, {Int(-3)}, {Int(7)}};
    for (const Simplex& j : std::vector<Simplex>{{}, {0}, {1}}) {
      for (const auto& u : us)
        if (!check_Bn(m, xi, j, u, ctx, N)) return fail("rescaling face mismatch");
    }
  }
  return ok();
}

// ---------------------------------------------------------------- 4
Outcome global_invariance() {
  BirationalMorphism m = p2_star();
  Divisor xi = canonical0(m.target);
  CheckReport a = check_invariance(m, xi, 3, 1e-9, 4, 3);
  if (!a.pass) return fail("star subdivision: " + a.details);

  BirationalMorphism r = p12_rescale();
  Divisor xir;
  xir.d = {Rat(1), Rat(1, 2)};
  CheckReport b = check_invariance(r, xir, 3, 1e-9, 4, 3);
  if (!b.pass) return fail("rescaling: " + b.details);
  return ok();
}

// ---------------------------------------------------------------- 5
Outcome rigidity_vanishing() {
  MultiFan l = p1();
  CheckReport v1 = check_vanishing(l, prim(l), {Rat(1)}, 5, 1e-8, 4, 3);
  if (!v1.pass) return fail("line vanishing: " + v1.details);

  MultiFan f = p2();
  CheckReport v2 = check_vanishing(f, prim(f), {Rat(1), Rat(0)}, 5, 1e-8, 4, 3);
  if (!v2.pass) return fail("plane vanishing: " + v2.details);

  Divisor xi;
  xi.d = {Rat(4), Rat(1), Rat(-2)};  // 3 x_0 + embed((1,1))
  RigidityHypothesis hyp;
  hyp.modulus = 3;
  hyp.eta.d = {Rat(1), Rat(0), Rat(0)};
  hyp.u = {Rat(1), Rat(1)};
  CheckReport rg = check_rigidity(f, prim(f), xi, hyp, 2, 5, 1e-8);
  if (!rg.pass) return fail("rigidity: " + rg.details);
  return ok();
}

// ---------------------------------------------------------------- 6
Outcome pushforward_functoriality() {
  auto sample_class = [](const MultiFan& fan, unsigned seed, int max_deg) {
    SRClass out(fan.num_rays());
    unsigned state = seed * 2654435761u + 997u;
    auto next = [&]() {
      state = state * 1664525u + 1013904223u;
      return (state >> 16) & 0x7fff;
    };
    for (const auto& s : fan.simplices) {
      if (s.empty()) continue;
      Monomial m(fan.num_rays(), 0);
      int deg = 0;
      for (int i : s) {
        int e = 1 + static_cast<int>(next() % 3);
        m[i] = e;
        deg += e;
      }
      if (deg > max_deg) continue;
      long c = static_cast<long>(next() % 9) - 4;
      if (c != 0) {
      Rat coef(Int(c), Int(1 + next() % 4));
      coef.canonicalize();
      out.add_term(m, coef);
    }
    }
    return out;
  };

  std::vector<BirationalMorphism> morphisms{p2_star(), p12_rescale()};
  for (const auto& m : morphisms) {
    SRClass one(m.source.num_rays());
    one.add_term(Monomial(m.source.num_rays(), 0), Rat(1));
    SRClass tone(m.target.num_rays());
    tone.add_term(Monomial(m.target.num_rays(), 0), Rat(1));
    if (!(rho_pushforward(m, one) == tone)) return fail("rho_*(1) != 1");

    RatVec u(m.target.rank);
    for (int j = 0; j < m.target.rank; ++j) u[j] = Rat(Int(2 * j + 3), Int(j + 1));
    for (unsigned seed = 0; seed < 20; ++seed) {
      SRClass x = sample_class(m.source, seed, 6);
      SRClass y = sample_class(m.target, seed + 100, 3);
      SRClass lhs = rho_pushforward(m, sr_mul(m.source, x, rho_pullback(m, y)));
      SRClass rhs = sr_mul(m.target, rho_pushforward(m, x), y);
      if (!(lhs == rhs)) return fail("projection formula");

      SRClass ux = sr_mul(m.source, embed_linear(m.source, m.source_v, u), x);
      if (!(rho_pushforward(m, ux) ==
            sr_mul(m.target, embed_linear(m.target, m.target_v, u), rho_pushforward(m, x))))
        return fail("module property");

      if (!(pushforward_point(m.target, m.target_v, rho_pushforward(m, x)) ==
            pushforward_point(m.source, m.source_v, x)))
        return fail("pi_* compatibility");
    }
  }

  // Composition over the star subdivision.
  BirationalMorphism m1 = p2_star();
  BirationalMorphism m2 = star_subdivide(m1.source, m1.source_v, {1, 3}, {Int(1), Int(2)});
  BirationalMorphism comp = compose(m1, m2);
  for (unsigned seed = 0; seed < 20; ++seed) {
    SRClass x = sample_class(comp.source, seed + 41, 6);
    if (!(rho_pushforward(m1, rho_pushforward(m2, x)) == rho_pushforward(comp, x)))
      return fail("composition functoriality");
  }
  return ok();
}

// ---------------------------------------------------------------- 7
Outcome class_invariance() {
  BirationalMorphism ms = p2_star();
  Divisor xis = canonical0(ms.target);
  BirationalMorphism mr = p12_rescale();
  Divisor xir;
  xir.d = {Rat(1), Rat(1, 2)};

  for (long N : {1L, 2L}) {
    CheckReport a = check_class_invariance(ms, xis, 2, N);
    if (!a.pass) return fail("star subdivision at (2," + std::to_string(N) + ")");
    CheckReport b = check_class_invariance(mr, xir, 2, N);
    if (!b.pass) return fail("rescaling at (2," + std::to_string(N) + ")");
  }

  // pi_*(class jets) against the Chern character of the character expansion.
  for (int which = 0; which < 2; ++which) {
    MultiFan f = which == 0 ? p1() : p2();
    EdgeVectorSet v = prim(f);
    Divisor xi = canonical0(f);
    CoefCtx ctx = ctx_for(f, v, xi);
    auto eps = epsilon_genus(f, v, xi, ctx, 2, 1);
    auto chg = ch_genus(genus_char_formula_auto(f, v, xi, ctx, 4, 16, 1), 2);
    auto diff = eps - chg;
    for (const auto& [k, p] : diff.terms())
      if (!p.truncated(2).zero())
        return fail(std::string(which == 0 ? "P1" : "P2") + ": pi_* vs ch mismatch");
  }
  return ok();
}

// ---------------------------------------------------------------- 8
Outcome qcartier_independence() {
  MultiFan cube = cube_fan();
  EdgeVectorSet v = prim(cube);
  Divisor ones = canonical0(cube);
  if (!qgorenstein_check(cube, v)) return fail("cube fan not Q-Gorenstein");

  std::vector<int> rotated{5, 6, 7, 0, 1, 2, 3, 4};
  CheckReport rep = check_triangulation_independence(cube, v, ones, {}, rotated, 3, 1e-9, 2);
  if (!rep.pass) return fail(rep.details);
  if (rep.details.find("triangulations_distinct=yes") == std::string::npos)
    return fail("triangulations coincide");

  Divisor bad = ones;
  bad.d[0] = Rat(2);
  try {
    check_triangulation_independence(cube, v, bad, {}, rotated, 1, 1e-9, 1);
    return fail("non-Q-Cartier divisor was not rejected");
  } catch (const NotQCartier&) {
  }
  return ok();
}

// ---------------------------------------------------------------- 9
Outcome special_values() {
  MultiFan l = p1();
  EdgeVectorSet v = prim(l);
  Divisor xi = canonical0(l);
  CoefCtx ctx = ctx_for(l, v, xi);
  GenusSeries g = genus_char_formula(l, v, xi, ctx, 4, 3);

  // Hand resummation of the two-term q^0 sum: -1 + 2/(1-zeta) = (1+zeta)/(1-zeta).
  ZetaRF expect = (zrf(Rat(1)) + zeta_s_pow(1)) * (zrf(Rat(1)) - zeta_s_pow(1)).inverse();
  const auto& c0 = g.c.at(IntVec{Int(0)});
  if (!(c0.terms().count(0) && c0.terms().at(0) == expect))
    return fail("q^0 coefficient is not (1+zeta)/(1-zeta)");

  // w-independence: no other character contributes at q^0.
  for (const auto& [u, s] : g.c) {
    if (u == IntVec{Int(0)}) continue;
    if (s.terms().count(0)) return fail("q^0 coefficient depends on w");
  }
  return ok();
}

// ---------------------------------------------------------------- 10
Outcome jacobi_laws() {
  Cx tau{0.31, 1.27};
  Cx sigma{0.143, 0.203};
  int K = 50;
  for (int k = 0; k < 10; ++k) {
    Cx z(0.17 + 0.073 * k - std::floor(0.17 + 0.073 * k), 0.06 + 0.011 * (k % 4));
    NumericValue base = phi_st_numeric(z, tau, sigma, K);
    for (int mm = -1; mm <= 1; ++mm)
      for (int nn = -1; nn <= 1; ++nn) {
        NumericValue shifted =
            phi_st_numeric(z + double(mm) * tau + double(nn), tau, sigma, K);
        Cx factor = std::exp(Cx(0, -2 * M_PI) * (double(mm) * sigma));
        REQUIRE_NEAR(shifted.value, factor * base.value, 1e-8, "lattice shift law");
      }
    NumericValue s_lhs = phi_st_numeric(z / tau, -1.0 / tau, sigma, K);
    NumericValue s_rhs = phi_st_numeric(z, tau, tau * sigma, K);
    REQUIRE_NEAR(s_lhs.value, tau * cis(z * sigma) * s_rhs.value, 1e-8, "S law");
    NumericValue t_lhs = phi_st_numeric(z, tau + 1.0, sigma, K);
    REQUIRE_NEAR(t_lhs.value, base.value, 1e-8, "T law");
  }
  return ok();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  std::vector<Criterion> criteria = {
      {1, "engine cross-check", engine_cross_check, 60},
      {2, "integrality of assembled series", integrality, 0},
      {3, "local identity over subdivisions", local_identity, 30},
      {4, "global invariance", global_invariance, 0},
      {5, "rigidity and vanishing", rigidity_vanishing, 0},
      {6, "push-forward functoriality", pushforward_functoriality, 0},
      {7, "class invariance and Chern character", class_invariance, 0},
      {8, "Q-Cartier triangulation independence", qcartier_independence, 0},
      {9, "special values", special_values, 0},
      {10, "Jacobi transformation laws", jacobi_laws, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o{false, "unhandled exception"};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = c.budget_seconds <= 0 || secs < c.budget_seconds;
    bool pass = o.pass && in_budget;
    if (!pass) ++failures;
    std::ostringstream line;
    line << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.name << " ("
         << secs << "s)";
    if (!o.detail.empty()) line << " -- " << o.detail;
    if (!in_budget) line << " -- exceeded runtime budget of " << c.budget_seconds << "s";
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
