#include "mfel/multifan.hpp"

#include <algorithm>
#include <functional>

#include "mfel/errors.hpp"

namespace mfel {

std::vector<Simplex> MultiFan::simplices_of_size(int k) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices)
    if (static_cast<int>(s.size()) == k) out.push_back(s);
  return out;
}

std::optional<std::size_t> MultiFan::maximal_index(const Simplex& s) const {
  for (std::size_t i = 0; i < maximal.size(); ++i)
    if (maximal[i].verts == s) return i;
  return std::nullopt;
}

IntVec EdgeVectorSet::vector(const MultiFan& fan, int ray) const {
  IntVec v = fan.rays[ray];
  for (auto& x : v) x *= mult[ray];
  return v;
}

std::vector<IntVec> EdgeVectorSet::vectors(const MultiFan& fan, const Simplex& s) const {
  std::vector<IntVec> out;
  out.reserve(s.size());
  for (int i : s) out.push_back(vector(fan, i));
  return out;
}

EdgeVectorSet EdgeVectorSet::primitive(const MultiFan& fan) {
  return EdgeVectorSet{IntVec(fan.num_rays(), Int(1))};
}

std::set<Simplex> simplex_closure(const std::vector<MaxCone>& maximal) {
  std::set<Simplex> out;
  for (const auto& mc : maximal) {
    std::size_t k = mc.verts.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
      Simplex s;
      for (std::size_t b = 0; b < k; ++b)
        if (mask & (std::size_t(1) << b)) s.push_back(mc.verts[b]);
      out.insert(std::move(s));
    }
  }
  return out;
}

std::vector<std::string> validate(const MultiFan& fan) {
  std::vector<std::string> report;
  auto note = [&](const std::string& s) { report.push_back(s); };

  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& p = fan.rays[i];
    if (static_cast<int>(p.size()) != fan.rank) {
      note("ray " + std::to_string(i) + " has wrong length");
      continue;
    }
    bool zero = true;
    for (const auto& x : p)
      if (x != 0) zero = false;
    if (zero) note("ray " + std::to_string(i) + " is zero");
  }
  if (fan.maximal.empty()) note("no maximal cones");
  for (const auto& mc : fan.maximal) {
    for (int i : mc.verts)
      if (i < 0 || i >= static_cast<int>(fan.num_rays()))
        note("maximal cone references unknown ray " + std::to_string(i));
    if (!std::is_sorted(mc.verts.begin(), mc.verts.end()) ||
        std::adjacent_find(mc.verts.begin(), mc.verts.end()) != mc.verts.end())
      note("maximal cone vertex list is not strictly sorted");
    if (mc.wplus < 0 || mc.wminus < 0) note("negative weight on a maximal cone");
  }

  if (fan.is_simplicial()) {
    if (!fan.has_simplex({})) note("empty simplex missing");
    for (const auto& mc : fan.maximal) {
      if (static_cast<int>(mc.verts.size()) != fan.rank)
        note("maximal simplex of wrong dimension");
      if (!fan.has_simplex(mc.verts)) note("maximal simplex missing from Sigma");
    }
    for (const auto& s : fan.simplices) {
      // Face closure: dropping any one vertex stays in Sigma.
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex t;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) t.push_back(s[j]);
        if (!fan.has_simplex(t)) {
          std::string msg = "face-closure violation at {";
          for (int i : s) msg += std::to_string(i) + " ";
          msg += "}";
          note(msg);
        }
      }
      // Independence of the spanning rays.
      if (!s.empty()) {
        std::vector<RatVec> rows;
        for (int i : s) rows.push_back(to_rat(fan.rays[i]));
        if (RatMat::from_rows(rows).rank() != s.size()) {
          std::string msg = "dependent rays in simplex {";
          for (int i : s) msg += std::to_string(i) + " ";
          msg += "}";
          note(msg);
        }
      }
      // Orphan check: contained in some maximal simplex.
      bool housed = false;
      for (const auto& mc : fan.maximal)
        if (std::includes(mc.verts.begin(), mc.verts.end(), s.begin(), s.end())) housed = true;
      if (!housed) {
        std::string msg = "orphan simplex {";
        for (int i : s) msg += std::to_string(i) + " ";
        msg += "}";
        note(msg);
      }
    }
  } else {
    for (std::size_t fi = 0; fi < fan.faces.size(); ++fi) {
      const auto& f = fan.faces[fi];
      for (int i : f.verts)
        if (i < 0 || i >= static_cast<int>(fan.num_rays()))
          note("face references unknown ray " + std::to_string(i));
      for (int c : f.facets) {
        if (c < 0 || c >= static_cast<int>(fan.faces.size())) {
          note("face " + std::to_string(fi) + " lists unknown facet");
          continue;
        }
        const auto& g = fan.faces[c];
        if (!std::includes(f.verts.begin(), f.verts.end(), g.verts.begin(), g.verts.end()))
          note("facet of face " + std::to_string(fi) + " is not a vertex subset");
      }
    }
    for (const auto& mc : fan.maximal) {
      bool found = false;
      for (const auto& f : fan.faces)
        if (f.verts == mc.verts) found = true;
      if (!found) note("maximal cone missing from the face list");
    }
  }
  return report;
}

void require_valid(const MultiFan& fan) {
  auto report = validate(fan);
  if (!report.empty()) throw Error("invalid multi-fan: " + report.front());
}

namespace {

void require_simplicial(const MultiFan& fan) {
  if (!fan.is_simplicial()) throw NotSimplicial();
}

// Primitive normal (canonical sign) of the hyperplane spanned by the rays of s.
IntVec facet_normal(const MultiFan& fan, const Simplex& s) {
  RatMat m(s.size(), fan.rank);
  for (std::size_t r = 0; r < s.size(); ++r)
    for (int c = 0; c < fan.rank; ++c) m(r, c) = Rat(fan.rays[s[r]][c]);
  auto ns = m.nullspace();
  if (ns.size() != 1) throw Error("facet does not span a hyperplane");
  IntVec normal = clear_denominators(ns[0]);
  for (const auto& x : normal) {
    if (x > 0) break;
    if (x < 0) {
      for (auto& y : normal) y = -y;
      break;
    }
  }
  return normal;
}

std::vector<IntVec> facet_hyperplanes(const MultiFan& fan) {
  std::set<IntVec> seen;
  if (fan.is_simplicial()) {
    for (const auto& s : fan.simplices_of_size(fan.rank - 1)) seen.insert(facet_normal(fan, s));
  } else {
    for (const auto& f : fan.faces) {
      std::vector<RatVec> rows;
      for (int i : f.verts) rows.push_back(to_rat(fan.rays[i]));
      if (RatMat::from_rows(rows).rank() + 1 == static_cast<std::size_t>(fan.rank))
        seen.insert(facet_normal(fan, f.verts));
    }
  }
  return {seen.begin(), seen.end()};
}

// Interior points, one per chamber of the central arrangement.
std::vector<RatVec> chamber_points(const std::vector<IntVec>& normals, std::size_t dim) {
  if (normals.empty()) return {RatVec(dim, Rat(0))};
  std::vector<RatVec> points;
  std::vector<int> signs;
  std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
    if (idx == normals.size()) {
      std::vector<IntVec> pre(normals.begin(), normals.begin() + idx);
      auto pt = strict_cone_point(pre, signs);
      points.push_back(*pt);
      return;
    }
    for (int s : {+1, -1}) {
      signs.push_back(s);
      std::vector<IntVec> pre(normals.begin(), normals.begin() + idx + 1);
      if (strict_cone_point(pre, signs)) dfs(idx + 1);
      signs.pop_back();
    }
  };
  dfs(0);
  return points;
}

// Membership of a generic vector in the cone of a maximal simplex.
bool cone_contains(const MultiFan& fan, const Simplex& verts, const RatVec& x) {
  if (verts.empty()) return x.empty() || std::all_of(x.begin(), x.end(), [](const Rat& r) {
           return r == 0;
         });
  RatMat b(fan.rank, verts.size());
  for (std::size_t j = 0; j < verts.size(); ++j)
    for (int i = 0; i < fan.rank; ++i) b(i, j) = Rat(fan.rays[verts[j]][i]);
  auto sol = b.solve(x);
  if (!sol) return false;
  // Solution is unique (independent rays); check the residual and positivity.
  RatVec back = b * *sol;
  for (int i = 0; i < fan.rank; ++i)
    if (back[i] != x[i]) return false;
  for (const auto& c : *sol)
    if (c <= 0) return false;
  return true;
}

Int weighted_count(const MultiFan& fan, const RatVec& x) {
  Int d = 0;
  for (const auto& mc : fan.maximal)
    if (cone_contains(fan, mc.verts, x)) d += mc.weight();
  return d;
}

}  // namespace

std::pair<bool, std::map<IntVec, Int>> is_precomplete_and_degree(const MultiFan& fan,
                                                                 const EdgeVectorSet&) {
  require_simplicial(fan);
  auto normals = facet_hyperplanes(fan);
  auto points = chamber_points(normals, fan.rank);
  std::map<IntVec, Int> table;
  bool constant = true;
  bool first = true;
  Int common = 0;
  for (const auto& p : points) {
    IntVec key = p.empty() ? IntVec{} : clear_denominators(p);
    Int d = weighted_count(fan, to_rat(key));
    table[key] = d;
    if (first) {
      common = d;
      first = false;
    } else if (d != common) {
      constant = false;
    }
  }
  return {constant, table};
}

Int degree(const MultiFan& fan, const EdgeVectorSet& v) {
  auto [ok, table] = is_precomplete_and_degree(fan, v);
  if (!ok) throw NotComplete("multi-fan is not pre-complete");
  return table.begin()->second;
}

ProjectedMultiFan project(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& k) {
  require_simplicial(fan);
  if (!fan.has_simplex(k)) throw Error("projection base is not a simplex of the fan");
  auto lp = quotient_lattice(fan.rank, v.vectors(fan, k));

  ProjectedMultiFan out;
  out.base = k;
  out.projection = lp;
  out.fan.rank = fan.rank - static_cast<int>(k.size());

  std::map<int, int> new_index;
  for (const auto& s : fan.simplices) {
    if (!std::includes(s.begin(), s.end(), k.begin(), k.end())) continue;
    for (int i : s) {
      if (std::binary_search(k.begin(), k.end(), i)) continue;
      if (!new_index.count(i)) {
        int idx = static_cast<int>(out.fan.rays.size());
        new_index[i] = idx;
        out.ray_origin.push_back(i);
        out.fan.rays.push_back(primitive(lp.projection * fan.rays[i]));
      }
    }
  }
  for (const auto& s : fan.simplices) {
    if (!std::includes(s.begin(), s.end(), k.begin(), k.end())) continue;
    Simplex t;
    for (int i : s)
      if (!std::binary_search(k.begin(), k.end(), i)) t.push_back(new_index[i]);
    std::sort(t.begin(), t.end());
    out.fan.simplices.insert(t);
  }
  for (const auto& mc : fan.maximal) {
    if (!std::includes(mc.verts.begin(), mc.verts.end(), k.begin(), k.end())) continue;
    Simplex t;
    for (int i : mc.verts)
      if (!std::binary_search(k.begin(), k.end(), i)) t.push_back(new_index[i]);
    std::sort(t.begin(), t.end());
    out.fan.maximal.push_back(MaxCone{t, mc.wplus, mc.wminus});
  }
  return out;
}

bool is_complete(const MultiFan& fan, const EdgeVectorSet& v) {
  require_simplicial(fan);
  for (const auto& k : fan.simplices) {
    auto projected = project(fan, v, k);
    auto [ok, table] = is_precomplete_and_degree(projected.fan, EdgeVectorSet::primitive(projected.fan));
    if (!ok) return false;
  }
  return true;
}

namespace {

// x = B lambda with lambda >= 0 for the independent columns in `gens`.
std::optional<RatVec> cone_coordinates(const std::vector<IntVec>& gens, const RatVec& x) {
  if (gens.empty()) {
    for (const auto& c : x)
      if (c != 0) return std::nullopt;
    return RatVec{};
  }
  std::size_t n = gens[0].size();
  RatMat b(n, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) b(i, j) = Rat(gens[j][i]);
  auto sol = b.solve(x);
  if (!sol) return std::nullopt;
  RatVec back = b * *sol;
  for (std::size_t i = 0; i < n; ++i)
    if (back[i] != x[i]) return std::nullopt;
  return sol;
}

}  // namespace

bool in_cone(const std::vector<IntVec>& gens, const RatVec& x) {
  bool zero = true;
  for (const auto& c : x)
    if (c != 0) zero = false;
  if (zero) return true;
  std::size_t k = gens.size();
  // Caratheodory: x lies in the cone iff it is a nonnegative combination of
  // some independent subset of the generators.
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    std::vector<IntVec> sub;
    for (std::size_t b = 0; b < k; ++b)
      if (mask & (std::size_t(1) << b)) sub.push_back(gens[b]);
    std::vector<RatVec> rows;
    for (const auto& g : sub) rows.push_back(to_rat(g));
    if (RatMat::from_rows(rows).rank() != sub.size()) continue;
    auto coords = cone_coordinates(sub, x);
    if (!coords) continue;
    bool nonneg = true;
    for (const auto& c : *coords)
      if (c < 0) nonneg = false;
    if (nonneg) return true;
  }
  return false;
}

bool in_relative_interior(const std::vector<IntVec>& gens, const RatVec& x) {
  auto coords = cone_coordinates(gens, x);
  if (!coords || coords->size() != gens.size()) return false;
  for (const auto& c : *coords)
    if (c <= 0) return false;
  return true;
}

Simplex negative_part(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& i,
                      const IntVec& vec) {
  auto duals = dual_basis(v.vectors(fan, i));
  Simplex out;
  for (std::size_t j = 0; j < i.size(); ++j)
    if (dot(duals[j], vec) < 0) out.push_back(i[j]);
  return out;
}

Int degree_projected(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& k) {
  require_simplicial(fan);
  if (!fan.has_simplex(k)) throw Error("not a simplex of the fan");
  std::optional<Int> agreed;
  for (unsigned seed : {0u, 1u, 2u}) {
    IntVec vec = generic_vector(fan, seed);
    Int d = 0;
    for (const auto& mc : fan.maximal) {
      if (!std::includes(mc.verts.begin(), mc.verts.end(), k.begin(), k.end())) continue;
      Simplex neg = negative_part(fan, v, mc.verts, vec);
      if (std::includes(k.begin(), k.end(), neg.begin(), neg.end())) d += mc.weight();
    }
    if (agreed && *agreed != d) throw NotComplete("projected degree depends on the generic vector");
    agreed = d;
  }
  return *agreed;
}

IntVec generic_vector(const MultiFan& fan, unsigned seed) {
  if (fan.rank == 0) return {};
  auto normals = facet_hyperplanes(fan);
  unsigned found = 0;
  for (long shell = 1;; ++shell) {
    IntVec x(fan.rank, Int(-shell));
    for (;;) {
      // Only the surface of the cube is new in this shell.
      bool on_shell = false;
      for (const auto& c : x)
        if (c == shell || c == -shell) on_shell = true;
      if (on_shell) {
        bool generic = true;
        for (const auto& nrm : normals) {
          Rat s = dot(to_rat(nrm), x);
          if (s == 0) {
            generic = false;
            break;
          }
        }
        if (generic) {
          if (found == seed) return x;
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

MultiFan projective_space(int n) {
  MultiFan fan;
  fan.rank = n;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    fan.rays.push_back(e);
  }
  fan.rays.push_back(IntVec(n, Int(-1)));
  for (int skip = 0; skip <= n; ++skip) {
    Simplex s;
    for (int i = 0; i <= n; ++i)
      if (i != skip) s.push_back(i);
    fan.maximal.push_back(MaxCone{s, 1, 0});
  }
  fan.simplices = simplex_closure(fan.maximal);
  return fan;
}

std::pair<MultiFan, EdgeVectorSet> weighted_projective(const std::vector<Int>& a) {
  if (a.size() < 2) throw BadWeights("need at least two weights");
  for (const auto& ai : a)
    if (ai < 1) throw BadWeights("weights must be positive");
  Int g = 0;
  for (const auto& ai : a) g = gcd(g, ai);
  if (g != 1) throw BadWeights("weights fail the coprimality condition");
  MultiFan fan = projective_space(static_cast<int>(a.size()) - 1);
  EdgeVectorSet v{IntVec(a.begin(), a.end())};
  return {fan, v};
}

MultiFan hirzebruch(int k) {
  MultiFan fan;
  fan.rank = 2;
  fan.rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(k)}, {Int(0), Int(-1)}};
  fan.maximal = {MaxCone{{0, 1}, 1, 0}, MaxCone{{1, 2}, 1, 0}, MaxCone{{2, 3}, 1, 0},
                 MaxCone{{0, 3}, 1, 0}};
  fan.simplices = simplex_closure(fan.maximal);
  return fan;
}

MultiFan cube_fan() {
  MultiFan fan;
  fan.rank = 3;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) fan.rays.push_back({Int(x), Int(y), Int(z)});
  // Ray index = 4*(x>0) + 2*(y>0) + (z>0) with the loop above.
  auto face_of = [&](int axis, int sign) {
    Simplex s;
    for (int i = 0; i < 8; ++i) {
      int coord = axis == 0 ? (i >> 2) & 1 : axis == 1 ? (i >> 1) & 1 : i & 1;
      if ((coord == 1) == (sign > 0)) s.push_back(i);
    }
    return s;
  };
  // Edges: vertex pairs differing in exactly one coordinate bit.
  std::map<Simplex, int> face_index;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      int d = i ^ j;
      if (d == 1 || d == 2 || d == 4) {
        Simplex e{i, j};
        face_index[e] = static_cast<int>(fan.faces.size());
        fan.faces.push_back(GeneralFace{e, {}});
      }
    }
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {-1, 1}) {
      Simplex sq = face_of(axis, sign);
      GeneralFace f{sq, {}};
      for (const auto& [everts, eidx] : face_index)
        if (everts.size() == 2 &&
            std::includes(sq.begin(), sq.end(), everts.begin(), everts.end()))
          f.facets.push_back(eidx);
      fan.faces.push_back(f);
      fan.maximal.push_back(MaxCone{sq, 1, 0});
    }
  return fan;
}

MultiFan multiplicity_multifan(MultiFan base, const Int& w) {
  if (w < 0) throw BadWeights("multiplicity must be nonnegative");
  for (auto& mc : base.maximal) {
    mc.wplus *= w;
    mc.wminus *= w;
  }
  return base;
}

std::vector<int> glue_minus_ray_map(const MultiFan& plus, const MultiFan& minus,
                                    const std::map<int, int>& minus_to_plus) {
  std::vector<int> ray_map(minus.num_rays(), -1);
  int next = static_cast<int>(plus.num_rays());
  for (std::size_t i = 0; i < minus.num_rays(); ++i) {
    auto it = minus_to_plus.find(static_cast<int>(i));
    ray_map[i] = it != minus_to_plus.end() ? it->second : next++;
  }
  return ray_map;
}

MultiFan glue_difference(const MultiFan& plus, const MultiFan& minus,
                         const std::map<int, int>& minus_to_plus) {
  if (plus.rank != minus.rank) throw BoundaryMismatch("rank mismatch");
  for (const auto& [from, to] : minus_to_plus) {
    if (from < 0 || from >= static_cast<int>(minus.num_rays()) || to < 0 ||
        to >= static_cast<int>(plus.num_rays()))
      throw BoundaryMismatch("identification references unknown rays");
    if (minus.rays[from] != plus.rays[to])
      throw BoundaryMismatch("identified rays have different directions");
  }
  auto ray_map = glue_minus_ray_map(plus, minus, minus_to_plus);

  MultiFan out;
  out.rank = plus.rank;
  out.rays = plus.rays;
  for (std::size_t i = 0; i < minus.num_rays(); ++i)
    if (ray_map[i] >= static_cast<int>(plus.num_rays())) out.rays.push_back(minus.rays[i]);

  auto map_simplex = [&](const Simplex& s) {
    Simplex t;
    for (int i : s) t.push_back(ray_map[i]);
    std::sort(t.begin(), t.end());
    return t;
  };
  out.maximal = plus.maximal;
  for (const auto& mc : minus.maximal)
    out.maximal.push_back(MaxCone{map_simplex(mc.verts), mc.wminus, mc.wplus});
  out.simplices = plus.simplices;
  for (const auto& s : minus.simplices) out.simplices.insert(map_simplex(s));
  return out;
}

}  // namespace mfel
