#include "mfel/birational.hpp"

#include <algorithm>
#include <functional>

#include "mfel/errors.hpp"
#include "mfel/lattice.hpp"

namespace mfel {

const Simplex& BirationalMorphism::rho_of(const Simplex& s) const {
  auto it = rho.find(s);
  if (it == rho.end()) throw Error("morphism has no image for a source simplex");
  return it->second;
}

std::vector<std::size_t> BirationalMorphism::fiber(const Simplex& target_max) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < source.maximal.size(); ++i)
    if (rho_of(source.maximal[i].verts) == target_max) out.push_back(i);
  return out;
}

namespace {

std::string simplex_str(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// All faces of the target, as vertex sets: the simplex set in the simplicial
// case, the explicit face poset (with rays and the empty face) otherwise.
std::vector<Simplex> target_faces(const MultiFan& fan) {
  std::vector<Simplex> out;
  if (fan.is_simplicial()) {
    out.assign(fan.simplices.begin(), fan.simplices.end());
  } else {
    out.push_back({});
    for (std::size_t i = 0; i < fan.num_rays(); ++i) out.push_back({static_cast<int>(i)});
    for (const auto& f : fan.faces) out.push_back(f.verts);
  }
  return out;
}

long cone_dim(const MultiFan& fan, const Simplex& verts) {
  std::vector<RatVec> rows;
  for (int i : verts) rows.push_back(to_rat(fan.rays[i]));
  return static_cast<long>(RatMat::from_rows(rows).rank());
}

// Sum of the primitive rays: a relative interior point of the cone.
RatVec interior_point(const MultiFan& fan, const Simplex& verts) {
  RatVec p(fan.rank, Rat(0));
  for (int i : verts)
    for (int t = 0; t < fan.rank; ++t) p[t] += Rat(fan.rays[i][t]);
  return p;
}

std::vector<IntVec> ray_dirs(const MultiFan& fan, const Simplex& verts) {
  std::vector<IntVec> out;
  for (int i : verts) out.push_back(fan.rays[i]);
  return out;
}

// Minimal target face whose cone contains the given source cone, by scanning
// relative interiors. Returns nullopt when no face contains it.
std::optional<Simplex> minimal_containing_face(const MultiFan& target, const Simplex& src_verts,
                                               const MultiFan& source) {
  if (src_verts.empty()) return Simplex{};
  RatVec p = interior_point(source, src_verts);
  std::optional<Simplex> best;
  long best_dim = -1;
  for (const auto& f : target_faces(target)) {
    if (f.empty()) continue;
    bool contains = in_cone(ray_dirs(target, f), p);
    if (!contains) continue;
    // Also require full containment of the source cone, not just of the
    // interior point.
    bool all = true;
    for (int i : src_verts)
      if (!in_cone(ray_dirs(target, f), to_rat(source.rays[i]))) all = false;
    if (!all) continue;
    long d = cone_dim(target, f);
    if (best_dim < 0 || d < best_dim) {
      best = f;
      best_dim = d;
    }
  }
  return best;
}

// Volume of the simplex the cone cuts from {<c, x> <= 1}, up to the fixed
// factor n!; comparable across cones only for one reference covector c.
Rat simplicial_volume(const MultiFan& fan, const Simplex& verts, const RatVec& c) {
  IntMat m = IntMat::from_columns(ray_dirs(fan, verts));
  Rat v = Rat(m.det());
  if (v < 0) v = -v;
  for (int i : verts) {
    Rat h = dot(c, fan.rays[i]);
    if (h <= 0) throw Error("reference covector not positive on the cone");
    v /= h;
  }
  return v;
}

// Strictly positive covector on the cone spanned by the given rays.
RatVec positive_covector(const MultiFan& fan, const Simplex& verts) {
  std::vector<IntVec> rays = ray_dirs(fan, verts);
  std::vector<int> signs(rays.size(), +1);
  auto c = strict_cone_point(rays, signs);
  if (!c) throw Error("cone admits no strictly positive covector");
  return *c;
}

}  // namespace

std::vector<std::string> validate_morphism(const BirationalMorphism& m) {
  std::vector<std::string> report;
  auto note = [&](const std::string& s) { report.push_back(s); };

  // a) injection kappa with equal ray cones.
  if (m.kappa.size() != m.target.num_rays()) note("kappa does not cover the target rays");
  std::set<int> seen;
  for (std::size_t i = 0; i < m.kappa.size(); ++i) {
    int ki = m.kappa[i];
    if (ki < 0 || ki >= static_cast<int>(m.source.num_rays())) {
      note("kappa(" + std::to_string(i) + ") out of range");
      continue;
    }
    if (!seen.insert(ki).second) note("kappa is not injective");
    if (m.source.rays[ki] != m.target.rays[i])
      note("C(i) != C'(kappa(i)) at ray " + std::to_string(i));
    auto it = m.rho.find({ki});
    if (it == m.rho.end() || it->second != Simplex{static_cast<int>(i)})
      note("rho(kappa(i)) != i at ray " + std::to_string(i));
  }

  // b) rho maps to the minimal containing face and pieces subdivide cones.
  for (const auto& s : m.source.simplices) {
    auto it = m.rho.find(s);
    if (it == m.rho.end()) {
      note("rho undefined on " + simplex_str(s));
      continue;
    }
    auto minimal = minimal_containing_face(m.target, s, m.source);
    if (!minimal) {
      note("source cone " + simplex_str(s) + " is contained in no target cone");
      continue;
    }
    if (*minimal != it->second)
      note("rho(" + simplex_str(s) + ") is not the minimal containing face");
  }
  // Top-dimensional volume bookkeeping per maximal target cone, all pieces
  // measured against one cross-section of the target cone.
  for (const auto& tc : m.target.maximal) {
    RatVec c = positive_covector(m.target, tc.verts);
    Rat total = 0;
    for (std::size_t si = 0; si < m.source.maximal.size(); ++si) {
      auto it = m.rho.find(m.source.maximal[si].verts);
      if (it == m.rho.end() || it->second != tc.verts) continue;
      total += simplicial_volume(m.source, m.source.maximal[si].verts, c);
    }
    Rat target_vol;
    if (m.target.is_simplicial()) {
      target_vol = simplicial_volume(m.target, tc.verts, c);
    } else {
      // Volume through any triangulation of the target cone.
      BirationalMorphism tri =
          triangulate(m.target, m.target_v, TriangulationStrategy::pulling, {});
      target_vol = 0;
      for (const auto& sc : tri.source.maximal)
        if (tri.rho_of(sc.verts) == tc.verts)
          target_vol += simplicial_volume(tri.source, sc.verts, c);
    }
    if (total != target_vol)
      note("pieces over " + simplex_str(tc.verts) + " do not fill the cone (volume " +
           total.get_str() + " vs " + target_vol.get_str() + ")");
  }

  // c) weights match.
  for (const auto& sc : m.source.maximal) {
    auto it = m.rho.find(sc.verts);
    if (it == m.rho.end()) continue;
    auto ti = m.target.maximal_index(it->second);
    if (!ti) {
      note("maximal source cone maps to non-maximal face " + simplex_str(it->second));
      continue;
    }
    if (sc.wplus != m.target.maximal[*ti].wplus || sc.wminus != m.target.maximal[*ti].wminus)
      note("weights disagree over " + simplex_str(it->second));
  }

  // Edge vector decomposition v_{i'} = sum_{i in rho(i')} a_{i'i} v_i.
  if (m.a.rows() != m.source.num_rays() || m.a.cols() != m.target.num_rays()) {
    note("a-matrix has wrong shape");
    return report;
  }
  for (std::size_t ip = 0; ip < m.source.num_rays(); ++ip) {
    auto it = m.rho.find({static_cast<int>(ip)});
    if (it == m.rho.end()) continue;
    const Simplex& img = it->second;
    RatVec combo(m.source.rank, Rat(0));
    for (std::size_t i = 0; i < m.target.num_rays(); ++i) {
      Rat c = m.a(ip, i);
      bool in_img = std::binary_search(img.begin(), img.end(), static_cast<int>(i));
      if (in_img && c <= 0) note("a-coefficient not positive on rho(i') at source ray " +
                                 std::to_string(ip));
      if (!in_img && c != 0) note("a-coefficient nonzero off rho(i') at source ray " +
                                  std::to_string(ip));
      if (c == 0) continue;
      IntVec vi = m.target_v.vector(m.target, static_cast<int>(i));
      for (int t = 0; t < m.source.rank; ++t) combo[t] += c * Rat(vi[t]);
    }
    IntVec vip = m.source_v.vector(m.source, static_cast<int>(ip));
    for (int t = 0; t < m.source.rank; ++t)
      if (combo[t] != Rat(vip[t])) {
        note("edge vector decomposition fails at source ray " + std::to_string(ip));
        break;
      }
  }
  return report;
}

void require_valid_morphism(const BirationalMorphism& m) {
  auto report = validate_morphism(m);
  if (!report.empty()) throw Error("invalid morphism: " + report.front());
}

namespace {

// a-row of a source ray: coordinates of its edge vector in the edge vectors
// of the target simplex it maps into.
RatVec a_row(const BirationalMorphism& m, int src_ray, const Simplex& img) {
  std::vector<IntVec> basis;
  for (int i : img) basis.push_back(m.target_v.vector(m.target, i));
  RatMat b(m.source.rank, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (int t = 0; t < m.source.rank; ++t) b(t, j) = Rat(basis[j][t]);
  auto sol = b.solve(to_rat(m.source_v.vector(m.source, src_ray)));
  if (!sol) throw Error("edge vector not in the span of its image simplex");
  RatVec row(m.target.num_rays(), Rat(0));
  for (std::size_t j = 0; j < img.size(); ++j) row[img[j]] = (*sol)[j];
  return row;
}

void fill_a_matrix(BirationalMorphism& m) {
  m.a = RatMat(m.source.num_rays(), m.target.num_rays());
  for (std::size_t ip = 0; ip < m.source.num_rays(); ++ip) {
    const Simplex& img = m.rho_of({static_cast<int>(ip)});
    RatVec row = a_row(m, static_cast<int>(ip), img);
    for (std::size_t i = 0; i < m.target.num_rays(); ++i) m.a(ip, i) = row[i];
  }
}

}  // namespace

BirationalMorphism star_subdivide(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& i0,
                                  const IntVec& v_new) {
  if (!fan.is_simplicial()) throw NotSimplicial();
  if (!fan.has_simplex(i0) || i0.size() < 2)
    throw NotInteriorVector("subdivision center must be a simplex with at least two rays");
  if (!in_relative_interior(v.vectors(fan, i0), to_rat(v_new)))
    throw NotInteriorVector();

  BirationalMorphism m;
  m.target = fan;
  m.target_v = v;
  m.source.rank = fan.rank;
  m.source.rays = fan.rays;
  int new_ray = static_cast<int>(fan.num_rays());
  m.source.rays.push_back(primitive(v_new));
  m.source_v.mult = v.mult;
  {
    IntVec prim = primitive(v_new);
    // v_new = c * primitive
    Int c = 0;
    for (std::size_t t = 0; t < prim.size(); ++t)
      if (prim[t] != 0) {
        c = v_new[t] / prim[t];
        break;
      }
    m.source_v.mult.push_back(c);
  }

  for (const auto& mc : fan.maximal) {
    if (std::includes(mc.verts.begin(), mc.verts.end(), i0.begin(), i0.end())) {
      for (int j : i0) {
        Simplex s;
        for (int i : mc.verts)
          if (i != j) s.push_back(i);
        s.push_back(new_ray);
        std::sort(s.begin(), s.end());
        m.source.maximal.push_back(MaxCone{s, mc.wplus, mc.wminus});
      }
    } else {
      m.source.maximal.push_back(mc);
    }
  }
  m.source.simplices = simplex_closure(m.source.maximal);

  m.kappa.resize(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) m.kappa[i] = static_cast<int>(i);

  for (const auto& s : m.source.simplices) {
    if (!std::binary_search(s.begin(), s.end(), new_ray)) {
      m.rho[s] = s;
    } else {
      std::set<int> img;
      for (int i : s)
        if (i != new_ray) img.insert(i);
      img.insert(i0.begin(), i0.end());
      m.rho[s] = Simplex(img.begin(), img.end());
    }
  }
  fill_a_matrix(m);
  return m;
}

BirationalMorphism rescale_morphism(const MultiFan& fan, const EdgeVectorSet& source_v,
                                    const EdgeVectorSet& target_v) {
  BirationalMorphism m;
  m.source = fan;
  m.target = fan;
  m.source_v = source_v;
  m.target_v = target_v;
  m.kappa.resize(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) m.kappa[i] = static_cast<int>(i);
  for (const auto& s : fan.simplices) m.rho[s] = s;
  fill_a_matrix(m);
  return m;
}

BirationalMorphism compose(const BirationalMorphism& rho2, const BirationalMorphism& rho1) {
  BirationalMorphism m;
  m.source = rho1.source;
  m.target = rho2.target;
  m.source_v = rho1.source_v;
  m.target_v = rho2.target_v;
  m.kappa.resize(m.target.num_rays());
  for (std::size_t i = 0; i < m.target.num_rays(); ++i) m.kappa[i] = rho1.kappa[rho2.kappa[i]];
  for (const auto& s : m.source.simplices) m.rho[s] = rho2.rho_of(rho1.rho_of(s));
  m.a = rho1.a * rho2.a;
  return m;
}

SRClass rho_pullback(const BirationalMorphism& m, const SRClass& x) {
  std::vector<Poly<Rat>> images;
  images.reserve(m.target.num_rays());
  for (std::size_t i = 0; i < m.target.num_rays(); ++i) {
    Poly<Rat> img(m.source.num_rays());
    for (std::size_t ip = 0; ip < m.source.num_rays(); ++ip)
      if (m.a(ip, i) != 0) {
        Monomial mono(m.source.num_rays(), 0);
        mono[ip] = 1;
        img.add_term(mono, m.a(ip, i));
      }
    images.push_back(img);
  }
  return reduce(m.source, x.compose(images));
}

Divisor pullback_divisor(const BirationalMorphism& m, const Divisor& xi) {
  Divisor out;
  out.d.assign(m.source.num_rays(), Rat(0));
  for (std::size_t ip = 0; ip < m.source.num_rays(); ++ip)
    for (std::size_t i = 0; i < m.target.num_rays(); ++i) out.d[ip] += m.a(ip, i) * xi.d[i];
  return out;
}

RestrictionTuple rho_pushforward_tuple(const BirationalMorphism& m, const SRClass& x) {
  if (!m.target.is_simplicial()) throw NotSimplicial();
  RestrictionTuple t;
  t.reserve(m.target.maximal.size());
  for (const auto& tc : m.target.maximal) {
    auto group = saturate_and_quotient(tc.verts, m.target_v.vectors(m.target, tc.verts));
    auto duals = dual_basis(m.target_v.vectors(m.target, tc.verts));
    RationalFunctionND acc = RationalFunctionND::from_poly(Poly<Rat>(m.target.rank));
    for (std::size_t si : m.fiber(tc.verts)) {
      const Simplex& sv = m.source.maximal[si].verts;
      auto sgroup = saturate_and_quotient(sv, m.source_v.vectors(m.source, sv));
      auto sduals = dual_basis(m.source_v.vectors(m.source, sv));
      Poly<Rat> num = restrict_class(m.source, m.source_v, x, sv)
                          .scaled(Rat(1) / Rat(Int(sgroup.order())));
      std::vector<RatVec> factors(sduals.begin(), sduals.end());
      acc = rf_add(acc, rf_normalize(std::move(num), factors, Rat(1)));
    }
    Poly<Rat> mult = Poly<Rat>::constant(m.target.rank, Rat(Int(group.order())));
    for (const auto& u : duals) mult = mult * linear_poly(u);
    acc = rf_mul_poly(acc, mult);
    t.push_back(acc.polynomial());
  }
  return t;
}

SRClass rho_pushforward(const BirationalMorphism& m, const SRClass& x) {
  RestrictionTuple t = rho_pushforward_tuple(m, x);
  return from_tuple(m.target, m.target_v, t);
}

namespace {

// Pulling triangulation of one face, recursing through the face lattice.
std::vector<Simplex> pull_face(const MultiFan& fan, const std::vector<int>& order,
                               const Simplex& verts, const std::vector<int>& facets) {
  long dim = cone_dim(fan, verts);
  if (static_cast<long>(verts.size()) == dim) return {verts};
  // Minimal vertex in the pulling order.
  int v0 = verts[0];
  for (int v : verts)
    if (order[v] < order[v0]) v0 = v;
  std::vector<Simplex> out;
  for (int fi : facets) {
    const auto& g = fan.faces[fi];
    if (std::binary_search(g.verts.begin(), g.verts.end(), v0)) continue;
    for (const auto& piece : pull_face(fan, order, g.verts, g.facets)) {
      Simplex s = piece;
      s.push_back(v0);
      std::sort(s.begin(), s.end());
      out.push_back(s);
    }
  }
  return out;
}

// Placing triangulation of a rank-3 cone over a convex polygon.
std::vector<Simplex> place_face(const MultiFan& fan, const std::vector<int>& order,
                                const Simplex& verts, const std::vector<int>& facets) {
  long dim = cone_dim(fan, verts);
  if (static_cast<long>(verts.size()) == dim) return {verts};
  if (dim != 3) throw Error("placing triangulation implemented for rank-3 cones only");
  // Boundary cycle of the polygon from the edge facets.
  std::map<int, std::vector<int>> adj;
  for (int fi : facets) {
    const auto& e = fan.faces[fi].verts;
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<int> cycle{verts[0]};
  std::set<int> used{verts[0]};
  while (cycle.size() < verts.size()) {
    int cur = cycle.back();
    bool advanced = false;
    for (int nb : adj[cur])
      if (!used.count(nb)) {
        cycle.push_back(nb);
        used.insert(nb);
        advanced = true;
        break;
      }
    if (!advanced) throw Error("face boundary is not a single cycle");
  }
  // Insertion order: the given ray order.
  std::vector<int> ins = cycle;
  std::sort(ins.begin(), ins.end(), [&](int a, int b) { return order[a] < order[b]; });

  auto det3 = [&](int a, int b, int c) {
    IntMat m = IntMat::from_columns({fan.rays[a], fan.rays[b], fan.rays[c]});
    return m.det();
  };
  // Current hull as a sub-cycle of the polygon boundary.
  std::vector<int> hull{ins[0], ins[1], ins[2]};
  std::vector<Simplex> tris;
  auto add_tri = [&](int a, int b, int c) {
    Simplex s{a, b, c};
    std::sort(s.begin(), s.end());
    tris.push_back(s);
  };
  add_tri(hull[0], hull[1], hull[2]);
  for (std::size_t next = 3; next < ins.size(); ++next) {
    int v = ins[next];
    // Interior reference point of the current hull.
    std::vector<bool> visible(hull.size());
    for (std::size_t e = 0; e < hull.size(); ++e) {
      int a = hull[e], b = hull[(e + 1) % hull.size()];
      Int dv = det3(a, b, v);
      // Side of the plane span(a,b) seen from the rest of the hull.
      Int dh = 0;
      for (int h : hull)
        if (h != a && h != b) {
          dh = det3(a, b, h);
          if (dh != 0) break;
        }
      visible[e] = dv != 0 && dh != 0 && ((dv > 0) != (dh > 0));
    }
    // Add a triangle per visible edge; vertices interior to the visible run
    // leave the hull and v is spliced in at the end of the run.
    std::vector<int> new_hull;
    for (std::size_t e = 0; e < hull.size(); ++e) {
      std::size_t prev = (e + hull.size() - 1) % hull.size();
      int a = hull[e], b = hull[(e + 1) % hull.size()];
      if (visible[e]) add_tri(a, b, v);
      if (!(visible[prev] && visible[e])) new_hull.push_back(a);
      if (visible[e] && !visible[(e + 1) % hull.size()]) new_hull.push_back(v);
    }
    hull = new_hull;
  }
  return tris;
}

}  // namespace

BirationalMorphism triangulate(const MultiFan& general, const EdgeVectorSet& v,
                               TriangulationStrategy strategy, const std::vector<int>& ray_order) {
  std::vector<int> order(general.num_rays());
  if (ray_order.empty()) {
    for (std::size_t i = 0; i < general.num_rays(); ++i) order[i] = static_cast<int>(i);
  } else {
    for (std::size_t pos = 0; pos < ray_order.size(); ++pos) order[ray_order[pos]] =
        static_cast<int>(pos);
  }

  BirationalMorphism m;
  m.target = general;
  m.target_v = v;
  m.source.rank = general.rank;
  m.source.rays = general.rays;
  m.source_v = v;
  m.kappa.resize(general.num_rays());
  for (std::size_t i = 0; i < general.num_rays(); ++i) m.kappa[i] = static_cast<int>(i);

  if (general.is_simplicial()) {
    m.source = general;
    for (const auto& s : general.simplices) m.rho[s] = s;
    fill_a_matrix(m);
    return m;
  }

  for (const auto& mc : general.maximal) {
    // Locate the face entry to get its facet list.
    const GeneralFace* face = nullptr;
    for (const auto& f : general.faces)
      if (f.verts == mc.verts) face = &f;
    if (!face) throw Error("maximal cone missing from the face list");
    auto pieces = strategy == TriangulationStrategy::pulling
                      ? pull_face(general, order, face->verts, face->facets)
                      : place_face(general, order, face->verts, face->facets);
    for (const auto& s : pieces) m.source.maximal.push_back(MaxCone{s, mc.wplus, mc.wminus});
  }
  m.source.simplices = simplex_closure(m.source.maximal);

  for (const auto& s : m.source.simplices) {
    auto img = minimal_containing_face(general, s, m.source);
    if (!img) throw Error("triangulation piece not contained in the fan");
    m.rho[s] = *img;
  }
  fill_a_matrix(m);
  return m;
}

}  // namespace mfel
