#include "mfel/sr_ring.hpp"

#include <algorithm>
#include <functional>

#include "mfel/errors.hpp"
#include "mfel/lattice.hpp"

namespace mfel {

namespace {

Simplex monomial_support(const Monomial& m) {
  Simplex s;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0) s.push_back(static_cast<int>(i));
  return s;
}

// Normalizes a linear form to a primitive integer covector with positive
// leading entry; returns the scale c with form = c * out.
std::pair<RatVec, Rat> normalize_linear(const RatVec& form) {
  IntVec prim = clear_denominators(form);
  // Fix the sign on the first nonzero entry.
  for (const auto& x : prim) {
    if (x > 0) break;
    if (x < 0) {
      for (auto& y : prim) y = -y;
      break;
    }
  }
  Rat scale;
  for (std::size_t i = 0; i < form.size(); ++i)
    if (prim[i] != 0) {
      scale = form[i] / Rat(prim[i]);
      break;
    }
  return {to_rat(prim), scale};
}

Poly<Rat> poly_of_linear(const RatVec& form) { return linear_poly(form); }

}  // namespace

const Poly<Rat>& RationalFunctionND::polynomial() const {
  if (!den.empty()) throw NonPolynomialResult();
  return num;
}

Rat RationalFunctionND::eval(const RatVec& x) const {
  Rat n = 0;
  std::vector<Rat> point(x.begin(), x.end());
  n = num.eval(point, Rat(1));
  Rat d = 1;
  for (const auto& [form, mult] : den) {
    Rat v = dot(form, x);
    if (v == 0) throw PoleProximity("rational function evaluated on its polar locus");
    for (int k = 0; k < mult; ++k) d *= v;
  }
  return n / d;
}

RationalFunctionND rf_normalize(Poly<Rat> num, const std::vector<RatVec>& den_factors,
                                const Rat& scale) {
  std::map<RatVec, int> den;
  Rat s = scale;
  for (const auto& f : den_factors) {
    auto [prim, c] = normalize_linear(f);
    den[prim] += 1;
    s /= c;
  }
  num = num.scaled(s);
  // Cancel factors that divide the numerator exactly.
  for (auto it = den.begin(); it != den.end();) {
    bool erased = false;
    while (it->second > 0) {
      auto [q, r] = divide_by_linear(num, poly_of_linear(it->first));
      if (!r.zero()) break;
      num = q;
      it->second -= 1;
    }
    if (it->second == 0) {
      it = den.erase(it);
      erased = true;
    }
    if (!erased) ++it;
  }
  return RationalFunctionND{std::move(num), std::move(den)};
}

RationalFunctionND rf_add(const RationalFunctionND& a, const RationalFunctionND& b) {
  // Common denominator by factor-wise maxima.
  std::map<RatVec, int> common = a.den;
  for (const auto& [f, m] : b.den) {
    auto& cm = common[f];
    cm = std::max(cm, m);
  }
  auto lift = [&](const RationalFunctionND& x) {
    Poly<Rat> n = x.num;
    for (const auto& [f, m] : common) {
      int have = 0;
      if (auto it = x.den.find(f); it != x.den.end()) have = it->second;
      for (int k = have; k < m; ++k) n = n * poly_of_linear(f);
    }
    return n;
  };
  Poly<Rat> num = lift(a) + lift(b);
  std::vector<RatVec> factors;
  for (const auto& [f, m] : common)
    for (int k = 0; k < m; ++k) factors.push_back(f);
  return rf_normalize(std::move(num), factors, Rat(1));
}

RationalFunctionND rf_mul_poly(const RationalFunctionND& a, const Poly<Rat>& p) {
  std::vector<RatVec> factors;
  for (const auto& [f, m] : a.den)
    for (int k = 0; k < m; ++k) factors.push_back(f);
  return rf_normalize(a.num * p, factors, Rat(1));
}

SRClass reduce(const MultiFan& fan, const Poly<Rat>& raw) {
  SRClass out(raw.nvars());
  for (const auto& [m, c] : raw.terms())
    if (fan.has_simplex(monomial_support(m))) out.add_term(m, c);
  return out;
}

SRClass sr_mul(const MultiFan& fan, const SRClass& a, const SRClass& b) {
  return reduce(fan, a * b);
}

SRClass embed_linear(const MultiFan& fan, const EdgeVectorSet& v, const RatVec& u) {
  SRClass out(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) {
    Rat c = dot(u, v.vector(fan, static_cast<int>(i)));
    if (c != 0) {
      Monomial m(fan.num_rays(), 0);
      m[i] = 1;
      out.add_term(m, c);
    }
  }
  return out;
}

SRClass divisor_class(const MultiFan& fan, const Divisor& xi) {
  SRClass out(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i)
    if (xi.d[i] != 0) {
      Monomial m(fan.num_rays(), 0);
      m[i] = 1;
      out.add_term(m, xi.d[i]);
    }
  return out;
}

Poly<Rat> restrict_class(const MultiFan& fan, const EdgeVectorSet& v, const SRClass& x,
                         const Simplex& i) {
  auto duals = dual_basis(v.vectors(fan, i));
  std::vector<Poly<Rat>> images(fan.num_rays(), Poly<Rat>(fan.rank));
  for (std::size_t j = 0; j < i.size(); ++j) images[i[j]] = linear_poly(duals[j]);
  return x.compose(images);
}

Poly<Rat> restrict_frame(const MultiFan& fan, const EdgeVectorSet& v, const Poly<Rat>& p,
                         const Simplex& j) {
  auto vecs = v.vectors(fan, j);
  auto duals = dual_basis(vecs);
  // Coordinate t maps to sum_{s in J} v_s[t] * <u_s, y>.
  std::vector<Poly<Rat>> images;
  images.reserve(fan.rank);
  for (int t = 0; t < fan.rank; ++t) {
    Poly<Rat> img(fan.rank);
    for (std::size_t s = 0; s < j.size(); ++s) {
      Poly<Rat> term = linear_poly(duals[s]).scaled(Rat(vecs[s][t]));
      img = img + term;
    }
    images.push_back(img);
  }
  return p.compose(images);
}

RatVec divisor_restriction(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi,
                           const Simplex& i) {
  auto duals = dual_basis(v.vectors(fan, i));
  RatVec u(fan.rank, Rat(0));
  for (std::size_t j = 0; j < i.size(); ++j)
    for (int t = 0; t < fan.rank; ++t) u[t] += xi.d[i[j]] * duals[j][t];
  return u;
}

RationalFunctionND pushforward_point(const MultiFan& fan, const EdgeVectorSet& v,
                                     const SRClass& x) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  RationalFunctionND acc = RationalFunctionND::from_poly(Poly<Rat>(fan.rank));
  for (const auto& mc : fan.maximal) {
    Int w = mc.weight();
    if (w == 0) continue;
    auto vecs = v.vectors(fan, mc.verts);
    auto duals = dual_basis(vecs);
    auto group = saturate_and_quotient(mc.verts, vecs);
    Poly<Rat> num = restrict_class(fan, v, x, mc.verts).scaled(Rat(w) / Rat(Int(group.order())));
    std::vector<RatVec> factors(duals.begin(), duals.end());
    acc = rf_add(acc, rf_normalize(std::move(num), factors, Rat(1)));
  }
  return acc;
}

Poly<Rat> pushforward_point_poly(const MultiFan& fan, const EdgeVectorSet& v, const SRClass& x) {
  return pushforward_point(fan, v, x).polynomial();
}

bool is_T_Cartier(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  for (const auto& mc : fan.maximal) {
    RatVec u = divisor_restriction(fan, v, xi, mc.verts);
    for (const auto& c : u)
      if (!is_integer(c)) return false;
  }
  return true;
}

RestrictionTuple tuple_of(const MultiFan& fan, const EdgeVectorSet& v, const SRClass& x) {
  RestrictionTuple t;
  t.reserve(fan.maximal.size());
  for (const auto& mc : fan.maximal) t.push_back(restrict_class(fan, v, x, mc.verts));
  return t;
}

void require_compatible(const MultiFan& fan, const EdgeVectorSet& v, const RestrictionTuple& t) {
  if (t.size() != fan.maximal.size()) throw IncompatibleTuple("tuple length mismatch");
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b) {
      Simplex overlap;
      std::set_intersection(fan.maximal[a].verts.begin(), fan.maximal[a].verts.end(),
                            fan.maximal[b].verts.begin(), fan.maximal[b].verts.end(),
                            std::back_inserter(overlap));
      if (overlap.empty()) continue;
      if (!(restrict_frame(fan, v, t[a], overlap) == restrict_frame(fan, v, t[b], overlap)))
        throw IncompatibleTuple();
    }
}

SRClass from_tuple(const MultiFan& fan, const EdgeVectorSet& v, const RestrictionTuple& t) {
  require_compatible(fan, v, t);
  long dmax = 0;
  for (const auto& p : t) dmax = std::max(dmax, p.degree());

  SRClass result(fan.num_rays());
  for (long d = 0; d <= dmax; ++d) {
    // Candidate monomials of degree d with simplex support.
    std::vector<Monomial> cands;
    std::function<void(Monomial&, std::size_t, long)> gen = [&](Monomial& m, std::size_t from,
                                                                long left) {
      if (left == 0) {
        if (fan.has_simplex(monomial_support(m))) cands.push_back(m);
        return;
      }
      if (from == fan.num_rays()) return;
      for (long e = 0; e <= left; ++e) {
        m[from] = static_cast<int>(e);
        gen(m, from + 1, left - e);
      }
      m[from] = 0;
    };
    Monomial m(fan.num_rays(), 0);
    gen(m, 0, d);
    if (cands.empty()) {
      bool needed = false;
      for (const auto& p : t)
        if (!p.homogeneous_component(d).zero()) needed = true;
      if (needed) throw NotInImage();
      continue;
    }

    // Linear system: coefficients of the restrictions match the tuple.
    std::map<Monomial, std::size_t, GradedLex> row_index;
    std::vector<std::vector<Rat>> rows;  // per equation: cands + rhs
    auto equation_row = [&](std::size_t mi, const Monomial& ym) -> std::vector<Rat>& {
      auto key = ym;
      key.push_back(static_cast<int>(mi));  // separate blocks per maximal cone
      auto it = row_index.find(key);
      if (it == row_index.end()) {
        it = row_index.emplace(key, rows.size()).first;
        rows.emplace_back(cands.size() + 1, Rat(0));
      }
      return rows[it->second];
    };
    for (std::size_t mi = 0; mi < fan.maximal.size(); ++mi) {
      for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        SRClass mono(fan.num_rays());
        mono.add_term(cands[ci], Rat(1));
        Poly<Rat> img = restrict_class(fan, v, mono, fan.maximal[mi].verts);
        for (const auto& [ym, c] : img.terms()) equation_row(mi, ym)[ci] = c;
      }
      Poly<Rat> rhs_part = t[mi].homogeneous_component(d);
      for (const auto& [ym, c] : rhs_part.terms()) equation_row(mi, ym)[cands.size()] = c;
    }
    RatMat a(rows.size(), cands.size());
    RatVec rhs(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cands.size(); ++c) a(r, c) = rows[r][c];
      rhs[r] = rows[r][cands.size()];
    }
    auto sol = a.solve(rhs);
    if (!sol) throw NotInImage();
    for (std::size_t ci = 0; ci < cands.size(); ++ci)
      if ((*sol)[ci] != 0) result.add_term(cands[ci], (*sol)[ci]);
  }
  return result;
}

}  // namespace mfel
