#include <algorithm>
#include <cmath>

#include "mfel/errors.hpp"
#include "mfel/genus.hpp"
#include "mfel/lattice.hpp"

namespace mfel {

FanGeometry FanGeometry::build(const MultiFan& fan, const EdgeVectorSet& v) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  FanGeometry g{fan, v, {}};
  g.cones.reserve(fan.maximal.size());
  for (const auto& mc : fan.maximal) {
    auto vecs = v.vectors(fan, mc.verts);
    g.cones.push_back(ConeData{mc.verts, mc.weight(), dual_basis(vecs),
                               saturate_and_quotient(mc.verts, vecs)});
  }
  return g;
}

CoefCtx make_ctx(const std::vector<JobPiece>& pieces) {
  // Every fractional coordinate of a face group appears among those of a
  // maximal cone, so scanning the maximal cones sizes all denominators:
  // f for the character roots and the q-grading, d and d*f for the powers
  // of zeta.
  Int fden = 1;
  Int zden = 1;
  for (const auto& piece : pieces) {
    if (piece.xi)
      for (const auto& d : piece.xi->d) zden = lcm(zden, d.get_den());
    for (const auto& mc : piece.fan->maximal) {
      auto vecs = piece.v->vectors(*piece.fan, mc.verts);
      auto group = saturate_and_quotient(mc.verts, vecs);
      for (const auto& h : group.elements())
        for (std::size_t idx = 0; idx < mc.verts.size(); ++idx) {
          fden = lcm(fden, h.f[idx].get_den());
          if (piece.xi) {
            Rat df = piece.xi->d[mc.verts[idx]] * h.f[idx];
            zden = lcm(zden, df.get_den());
          }
        }
    }
  }
  CoefCtx ctx;
  ctx.cyclo = CycloField::get(fden.get_si());
  ctx.M = Int(lcm(zden, fden)).get_si();
  ctx.qden = fden.get_si();
  ctx.reg_den = fden.get_si();
  return ctx;
}

namespace {

Cx dot_cx(const RatVec& u, const std::vector<Cx>& w) {
  Cx acc(0, 0);
  for (std::size_t j = 0; j < u.size(); ++j) acc += u[j].get_d() * w[j];
  return acc;
}

// The double H_I-sum of phi_st products, without completeness checks.
NumericValue genus_sum(const FanGeometry& g, const RatVec& d, const std::vector<Cx>& w,
                       const GenusParams& p) {
  Cx total(0, 0);
  double bound = 0;
  for (const auto& cone : g.cones) {
    if (cone.weight == 0) continue;
    Cx cone_sum(0, 0);
    double cone_bound = 0;
    const auto& elems = cone.group.elements();
    for (const auto& h1 : elems)
      for (const auto& h2 : elems) {
        Cx prod(1, 0);
        double rel = 0;
        for (std::size_t idx = 0; idx < cone.verts.size(); ++idx) {
          double f1 = h1.f[idx].get_d();
          double f2 = h2.f[idx].get_d();
          double di = d[cone.verts[idx]].get_d();
          Cx zi = -dot_cx(cone.duals[idx], w) + f1 * p.tau - f2;
          NumericValue val = phi_st_numeric(zi, p.tau, di * p.sigma, p.K, p.pole_guard);
          prod *= cis(p.sigma * (di * f1)) * val.value;
          rel += val.bound / std::max(std::abs(val.value), 1e-300);
        }
        cone_sum += prod;
        cone_bound += rel * std::abs(prod);
      }
    double scale = cone.weight.get_d() / static_cast<double>(cone.group.order());
    total += scale * cone_sum;
    bound += std::abs(scale) * cone_bound;
  }
  return {total, bound};
}

}  // namespace

NumericValue genus_numeric(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi,
                           const std::vector<Cx>& w, const GenusParams& p) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  if (!is_complete(fan, v)) throw NotComplete();
  return genus_sum(FanGeometry::build(fan, v), xi.d, w, p);
}

NumericValue genus_numeric_regulated(const MultiFan& fan, const EdgeVectorSet& v,
                                     const Divisor& xi, const Divisor& slope,
                                     const std::vector<Cx>& w, const GenusParams& p, double eps) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  if (!is_complete(fan, v)) throw NotComplete();
  FanGeometry g = FanGeometry::build(fan, v);
  // Average of +-eps shifts along the slope kills the linear term of the
  // expansion; the difference of the two evaluations measures what remains.
  Rat re(eps);
  RatVec dp(xi.d), dm(xi.d);
  for (std::size_t i = 0; i < dp.size(); ++i) {
    dp[i] += re * slope.d[i];
    dm[i] -= re * slope.d[i];
  }
  NumericValue a = genus_sum(g, dp, w, p);
  NumericValue b = genus_sum(g, dm, w, p);
  Cx avg = (a.value + b.value) / 2.0;
  double spread = std::abs(a.value - b.value);
  return {avg, (a.bound + b.bound) / 2.0 + spread};
}

NumericValue genus_along_v(const MultiFan& fan, const EdgeVectorSet& v, const Divisor& xi,
                           const IntVec& vec, Cx z, const GenusParams& p) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  bool supported = false;
  for (const auto& mc : fan.maximal) {
    std::vector<IntVec> gens;
    for (int i : mc.verts) gens.push_back(fan.rays[i]);
    if (in_cone(gens, to_rat(vec))) {
      supported = true;
      break;
    }
  }
  if (!supported && !is_complete(fan, v)) throw VectorOutsideSupport();
  std::vector<Cx> w(fan.rank);
  for (int j = 0; j < fan.rank; ++j) w[j] = z * vec[j].get_d();
  return genus_sum(FanGeometry::build(fan, v), xi.d, w, p);
}

RatVec generic_covector(const MultiFan& fan, const EdgeVectorSet& v, unsigned seed) {
  if (fan.rank == 0) return {};
  unsigned found = 0;
  for (long shell = 1;; ++shell) {
    IntVec x(fan.rank, Int(-shell));
    for (;;) {
      bool on_shell = false;
      for (const auto& c : x)
        if (c == shell || c == -shell) on_shell = true;
      if (on_shell) {
        bool good = true;
        for (std::size_t i = 0; i < fan.num_rays() && good; ++i)
          if (dot(to_rat(x), v.vector(fan, static_cast<int>(i))) == 0) good = false;
        if (good) {
          if (found == seed) return to_rat(x);
          ++found;
        }
      }
      int pos = fan.rank - 1;
      while (pos >= 0) {
        x[pos] += 1;
        if (x[pos] <= shell) break;
        x[pos] = -shell;
        --pos;
      }
      if (pos < 0) break;
    }
  }
}

std::vector<Cx> sample_w(int rank, unsigned index) {
  std::vector<Cx> w(rank);
  for (int j = 0; j < rank; ++j) {
    double re = 0.2311 + 0.0817 * j + 0.1373 * static_cast<double>(index);
    double im = 0.1129 + 0.0293 * j + 0.0531 * static_cast<double>(index);
    w[j] = Cx(re - std::floor(re), im / (1.0 + 0.3 * im));
  }
  return w;
}

}  // namespace mfel
