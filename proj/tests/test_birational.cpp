#include <doctest.h>

#include "mfel/birational.hpp"
#include "mfel/errors.hpp"
#include "mfel/lattice.hpp"

using namespace mfel;

namespace {

MultiFan p2() { return projective_space(2); }
EdgeVectorSet prim(const MultiFan& f) { return EdgeVectorSet::primitive(f); }

BirationalMorphism p2_star() {
  MultiFan f = p2();
  return star_subdivide(f, prim(f), {0, 1}, {Int(1), Int(1)});
}

BirationalMorphism p12_rescale() {
  auto [fan, vprime] = weighted_projective({Int(1), Int(2)});
  return rescale_morphism(fan, vprime, EdgeVectorSet::primitive(fan));
}

SRClass mono(std::size_t nvars, std::initializer_list<int> exps, Rat c = Rat(1)) {
  SRClass p(nvars);
  p.add_term(Monomial(exps), c);
  return p;
}

// Random-ish deterministic classes of bounded degree in the source ring.
SRClass sample_class(const MultiFan& fan, unsigned seed, int max_deg) {
  SRClass out(fan.num_rays());
  unsigned state = seed * 2654435761u + 12345u;
  auto next = [&]() {
    state = state * 1664525u + 1013904223u;
    return (state >> 16) & 0x7fff;
  };
  for (const auto& s : fan.simplices) {
    if (s.empty() || static_cast<int>(s.size()) > max_deg) continue;
    Monomial m(fan.num_rays(), 0);
    int deg = 0;
    for (int i : s) {
      int e = 1 + static_cast<int>(next() % 2);
      m[i] = e;
      deg += e;
    }
    if (deg > max_deg) continue;
    long c = static_cast<long>(next() % 7) - 3;
    if (c != 0) {
      Rat coef(Int(c), Int(1 + next() % 3));
      coef.canonicalize();
      out.add_term(m, coef);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("birational");

TEST_CASE("star subdivision of the projective plane") {
  BirationalMorphism m = p2_star();
  CHECK(m.source.maximal.size() == 4);
  CHECK(m.source.num_rays() == 4);
  // a-row of the new ray: v_new = v_0 + v_1.
  CHECK(m.a(3, 0) == Rat(1));
  CHECK(m.a(3, 1) == Rat(1));
  CHECK(m.a(3, 2) == Rat(0));
  CHECK(validate_morphism(m).empty());
}

TEST_CASE("identity and rescaling morphisms validate") {
  MultiFan f = p2();
  CHECK(validate_morphism(rescale_morphism(f, prim(f), prim(f))).empty());
  CHECK(validate_morphism(p12_rescale()).empty());
}

TEST_CASE("weight tampering is reported") {
  BirationalMorphism m = p2_star();
  m.source.maximal[0].wplus = 5;
  auto report = validate_morphism(m);
  bool found = false;
  for (const auto& r : report)
    if (r.find("weights disagree") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("subdivision center guards") {
  MultiFan f = p2();
  CHECK_THROWS_AS(star_subdivide(f, prim(f), {0, 1}, {Int(1), Int(0)}), NotInteriorVector);
  CHECK_THROWS_AS(star_subdivide(f, prim(f), {0}, {Int(2), Int(0)}), NotInteriorVector);
  CHECK_THROWS_AS(star_subdivide(f, prim(f), {0, 1}, {Int(-1), Int(-1)}), NotInteriorVector);
}

TEST_CASE("pullback of the quotient divisor") {
  BirationalMorphism m = p12_rescale();
  // rho^*(x_0 + 1/2 x_1) = x_0 + x_1 for V = {1,-1}, V' = {1,-2}.
  SRClass xi = mono(2, {1, 0}) + mono(2, {0, 1}, Rat(1, 2));
  SRClass expect = mono(2, {1, 0}) + mono(2, {0, 1});
  CHECK(rho_pullback(m, xi) == expect);
  CHECK(rho_pullback(m, mono(2, {0, 0})) == mono(2, {0, 0}));

  Divisor dxi;
  dxi.d = {Rat(1), Rat(1, 2)};
  CHECK(pullback_divisor(m, dxi).d == RatVec{Rat(1), Rat(1)});
}

TEST_CASE("pullback along the star subdivision") {
  BirationalMorphism m = p2_star();
  SRClass expect = mono(4, {1, 0, 0, 0}) + mono(4, {0, 0, 0, 1});
  CHECK(rho_pullback(m, mono(3, {1, 0, 0})) == expect);
  // Ring homomorphism: products map to reduced products.
  SRClass x0x1 = mono(3, {1, 1, 0});
  SRClass img = rho_pullback(m, x0x1);
  SRClass by_parts = sr_mul(m.source, rho_pullback(m, mono(3, {1, 0, 0})),
                            rho_pullback(m, mono(3, {0, 1, 0})));
  CHECK(img == by_parts);
}

TEST_CASE("push-forward of 1 is 1") {
  for (const BirationalMorphism& m : {p2_star(), p12_rescale()}) {
    SRClass one(m.source.num_rays());
    one.add_term(Monomial(m.source.num_rays(), 0), Rat(1));
    SRClass target_one(m.target.num_rays());
    target_one.add_term(Monomial(m.target.num_rays(), 0), Rat(1));
    CHECK(rho_pushforward(m, one) == target_one);
  }
}

TEST_CASE("push-forward tuple matches pointwise evaluation of the formula") {
  BirationalMorphism m = p2_star();
  SRClass x = mono(4, {0, 0, 0, 1});  // the exceptional class
  RestrictionTuple t = rho_pushforward_tuple(m, x);
  // Independent oracle: evaluate both sides of the defining localization
  // formula at rational points.
  std::vector<RatVec> points = {{Rat(1), Rat(2)}, {Rat(-2), Rat(5)}, {Rat(3), Rat(-7)},
                                {Rat(5, 2), Rat(1, 3)}, {Rat(-4, 3), Rat(-9, 5)}};
  for (std::size_t ti = 0; ti < m.target.maximal.size(); ++ti) {
    const Simplex& tv = m.target.maximal[ti].verts;
    auto tgroup = saturate_and_quotient(tv, m.target_v.vectors(m.target, tv));
    auto tduals = dual_basis(m.target_v.vectors(m.target, tv));
    for (const auto& pt : points) {
      Rat uI(1);
      for (const auto& d : tduals) uI *= dot(d, pt);
      Rat lhs = t[ti].eval(pt, Rat(1));
      Rat rhs(0);
      for (std::size_t si : m.fiber(tv)) {
        const Simplex& sv = m.source.maximal[si].verts;
        auto sgroup = saturate_and_quotient(sv, m.source_v.vectors(m.source, sv));
        auto sduals = dual_basis(m.source_v.vectors(m.source, sv));
        Rat uIp(1);
        for (const auto& d : sduals) uIp *= dot(d, pt);
        Rat num = restrict_class(m.source, m.source_v, x, sv).eval(pt, Rat(1));
        rhs += num / (Rat(Int(sgroup.order())) * uIp);
      }
      rhs *= Rat(Int(tgroup.order())) * uI;
      CHECK(lhs == rhs);
    }
  }
  // The reconstructed class has the same tuple.
  SRClass pushed = rho_pushforward(m, x);
  CHECK(tuple_of(m.target, m.target_v, pushed) == t);
}

TEST_CASE("projection formula on sampled classes") {
  for (const BirationalMorphism& m : {p2_star(), p12_rescale()}) {
    for (unsigned seed = 0; seed < 4; ++seed) {
      SRClass x = sample_class(m.source, seed, 4);
      SRClass y = sample_class(m.target, seed + 17, 2);
      SRClass lhs = rho_pushforward(m, sr_mul(m.source, x, rho_pullback(m, y)));
      SRClass rhs = sr_mul(m.target, rho_pushforward(m, x), y);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("module property of the push-forward") {
  BirationalMorphism m = p2_star();
  RatVec u{Rat(3), Rat(-1)};
  for (unsigned seed = 0; seed < 3; ++seed) {
    SRClass x = sample_class(m.source, seed, 4);
    SRClass ux = sr_mul(m.source, embed_linear(m.source, m.source_v, u), x);
    SRClass lhs = rho_pushforward(m, ux);
    SRClass rhs = sr_mul(m.target, embed_linear(m.target, m.target_v, u), rho_pushforward(m, x));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("push-forward is compatible with the point push-forward") {
  for (const BirationalMorphism& m : {p2_star(), p12_rescale()}) {
    for (unsigned seed = 0; seed < 3; ++seed) {
      SRClass x = sample_class(m.source, seed, 4);
      auto through = pushforward_point(m.target, m.target_v, rho_pushforward(m, x));
      auto direct = pushforward_point(m.source, m.source_v, x);
      CHECK(through == direct);
    }
  }
}

TEST_CASE("composition of subdivisions is functorial") {
  BirationalMorphism m1 = p2_star();
  // Subdivide the new cone {1,3} of the source at e1 + 2 e2.
  BirationalMorphism m2 = star_subdivide(m1.source, m1.source_v, {1, 3}, {Int(1), Int(2)});
  BirationalMorphism comp = compose(m1, m2);
  CHECK(validate_morphism(m2).empty());
  CHECK(validate_morphism(comp).empty());
  for (unsigned seed = 0; seed < 3; ++seed) {
    SRClass x = sample_class(comp.source, seed, 4);
    SRClass two_step = rho_pushforward(m1, rho_pushforward(m2, x));
    SRClass one_step = rho_pushforward(comp, x);
    CHECK(two_step == one_step);
  }
  // Identity morphism pushes forward trivially.
  MultiFan f = p2();
  BirationalMorphism ident = rescale_morphism(f, prim(f), prim(f));
  for (unsigned seed = 0; seed < 3; ++seed) {
    SRClass x = sample_class(f, seed, 4);
    CHECK(rho_pushforward(ident, x) == x);
  }
}

TEST_CASE("random star subdivisions keep their contracts") {
  // Seeded scatter of subdivision centers across the plane fans.
  for (unsigned seed = 0; seed < 6; ++seed) {
    MultiFan f = seed % 2 == 0 ? p2() : hirzebruch(1);
    EdgeVectorSet v = prim(f);
    unsigned state = seed * 48271u + 11u;
    auto next = [&]() {
      state = state * 1664525u + 1013904223u;
      return (state >> 16) & 0x7fff;
    };
    const auto& mc = f.maximal[next() % f.maximal.size()].verts;
    long a = 1 + next() % 3, b = 1 + next() % 3;
    IntVec center(2);
    for (int t = 0; t < 2; ++t)
      center[t] = Int(a) * f.rays[mc[0]][t] + Int(b) * f.rays[mc[1]][t];
    BirationalMorphism m = star_subdivide(f, v, mc, center);
    CHECK(validate_morphism(m).empty());
    CHECK(is_complete(m.source, m.source_v));
    for (const auto& jp : m.source.simplices)
      CHECK(degree_projected(m.source, m.source_v, jp) ==
            degree_projected(m.target, m.target_v, m.rho_of(jp)));
  }
}

TEST_CASE("degree equality under morphisms of complete fans") {
  BirationalMorphism m = p2_star();
  for (const auto& jp : m.source.simplices) {
    Int src = degree_projected(m.source, m.source_v, jp);
    Int tgt = degree_projected(m.target, m.target_v, m.rho_of(jp));
    CHECK(src == tgt);
  }
}

TEST_CASE("triangulations of the cube fan") {
  MultiFan cube = cube_fan();
  EdgeVectorSet v = prim(cube);
  BirationalMorphism t1 = triangulate(cube, v, TriangulationStrategy::pulling, {});
  // Pulling at a vertex and at its antipode picks the same square diagonals,
  // so rotate the order to flip them instead.
  std::vector<int> rotated{5, 6, 7, 0, 1, 2, 3, 4};
  BirationalMorphism t2 = triangulate(cube, v, TriangulationStrategy::pulling, rotated);
  CHECK(t1.source.maximal.size() == 12);
  CHECK(t2.source.maximal.size() == 12);
  CHECK(t1.source.is_simplicial());
  CHECK(validate_morphism(t1).empty());
  CHECK(validate_morphism(t2).empty());
  CHECK(t1.source.simplices != t2.source.simplices);

  BirationalMorphism t3 = triangulate(cube, v, TriangulationStrategy::placing, {});
  CHECK(t3.source.maximal.size() == 12);
  CHECK(validate_morphism(t3).empty());

  // Both triangulated fans are genuine complete fans of degree one.
  for (const BirationalMorphism* t : {&t1, &t2}) {
    CHECK(is_complete(t->source, v));
    CHECK(degree_projected(t->source, v, {}) == 1);
  }

  // Already-simplicial fans triangulate to themselves.
  MultiFan f = p2();
  BirationalMorphism ident = triangulate(f, prim(f), TriangulationStrategy::pulling, {});
  CHECK(ident.source.simplices == f.simplices);
}

TEST_SUITE_END();
