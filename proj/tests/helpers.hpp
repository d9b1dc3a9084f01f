#pragma once

#include "mfel/genus.hpp"

namespace mfel::testutil {

inline MultiFan p1() { return projective_space(1); }
inline MultiFan p2() { return projective_space(2); }
inline EdgeVectorSet prim(const MultiFan& f) { return EdgeVectorSet::primitive(f); }

inline Divisor canonical0(const MultiFan& f) {
  Divisor d;
  d.d.assign(f.num_rays(), Rat(1));
  return d;
}

inline Divisor embed_div(const MultiFan& f, const EdgeVectorSet& v, const RatVec& u) {
  Divisor d;
  d.d.resize(f.num_rays());
  for (std::size_t i = 0; i < f.num_rays(); ++i)
    d.d[i] = dot(u, v.vector(f, static_cast<int>(i)));
  return d;
}

inline CoefCtx ctx_for(const MultiFan& f, const EdgeVectorSet& v, const Divisor& xi) {
  return make_ctx({JobPiece{&f, &v, &xi}});
}

inline BirationalMorphism p2_star() {
  MultiFan f = p2();
  EdgeVectorSet v = prim(f);
  return star_subdivide(f, v, {0, 1}, {Int(1), Int(1)});
}

inline BirationalMorphism p12_rescale() {
  auto [fan, vprime] = weighted_projective({Int(1), Int(2)});
  return rescale_morphism(fan, vprime, EdgeVectorSet::primitive(fan));
}

}  // namespace mfel::testutil
