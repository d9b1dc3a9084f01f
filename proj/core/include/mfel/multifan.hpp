#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mfel/lattice.hpp"
#include "mfel/matrix.hpp"
#include "mfel/rational.hpp"

namespace mfel {

using Simplex = std::vector<int>;  ///< sorted ray indices; {} is the empty simplex

/// Maximal cone with its pair of nonnegative weights.
struct MaxCone {
  Simplex verts;
  Int wplus = 1;
  Int wminus = 0;
  Int weight() const { return wplus - wminus; }
};

/// Face of a general (not necessarily simplicial) fan, with its facets listed
/// explicitly; rays themselves are not repeated here.
struct GeneralFace {
  Simplex verts;
  std::vector<int> facets;  ///< indices into MultiFan::faces; rays are implied
};

/// A multi-fan: weighted collection of rational cones organized by an
/// augmented simplicial set (or an explicit face poset in the general case).
/// Distinct ray indices may carry equal directions; identity of a ray is its
/// index. Immutable by convention once built.
struct MultiFan {
  int rank = 0;
  std::vector<IntVec> rays;              ///< primitive directions p_i
  std::set<Simplex> simplices;           ///< all of Sigma, including {} (simplicial case)
  std::vector<MaxCone> maximal;          ///< Sigma^(n) with weights
  std::vector<GeneralFace> faces;        ///< nonempty only for non-simplicial fans

  bool is_simplicial() const { return faces.empty(); }
  std::size_t num_rays() const { return rays.size(); }
  bool has_simplex(const Simplex& s) const { return simplices.count(s) > 0; }
  /// Simplices of the given cardinality.
  std::vector<Simplex> simplices_of_size(int k) const;
  std::optional<std::size_t> maximal_index(const Simplex& s) const;
};

/// Edge vectors v_i = c_i * p_i given by positive integer multiplicities.
struct EdgeVectorSet {
  IntVec mult;
  IntVec vector(const MultiFan& fan, int ray) const;
  std::vector<IntVec> vectors(const MultiFan& fan, const Simplex& s) const;
  static EdgeVectorSet primitive(const MultiFan& fan);
};

/// Q-divisor xi = sum_i d_i x_i.
struct Divisor {
  RatVec d;
};

/// Rebuilds the face closure of a set of maximal cones.
std::set<Simplex> simplex_closure(const std::vector<MaxCone>& maximal);

/// Checks every structural invariant and reports all violations; an empty
/// report means the fan is valid.
std::vector<std::string> validate(const MultiFan& fan);
/// Throws Error on an invalid fan.
void require_valid(const MultiFan& fan);

/// The projected multi-fan with respect to a simplex K: the rays of the
/// simplices containing K, pushed to the quotient lattice.
struct ProjectedMultiFan {
  Simplex base;
  LatticeProjection projection;
  MultiFan fan;                       ///< lives in the quotient lattice
  std::vector<int> ray_origin;        ///< projected ray index -> original ray index
};

ProjectedMultiFan project(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& k);

/// Chamber scan of the facet hyperplane arrangement: true plus the common
/// degree if the weighted count d_v is chamber-independent, else false plus
/// the per-chamber table (keyed by an interior integer vector).
std::pair<bool, std::map<IntVec, Int>> is_precomplete_and_degree(const MultiFan& fan,
                                                                 const EdgeVectorSet& v);
/// Degree of a pre-complete multi-fan.
Int degree(const MultiFan& fan, const EdgeVectorSet& v);

/// Completeness: every projected multi-fan is pre-complete.
bool is_complete(const MultiFan& fan, const EdgeVectorSet& v);

/// deg(Delta_K) of a complete multi-fan, computed from several generic
/// vectors and cross-checked for agreement.
Int degree_projected(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& k);

/// Deterministic generic integral vector: lies on no facet hyperplane.
/// Distinct seeds give distinct vectors.
IntVec generic_vector(const MultiFan& fan, unsigned seed);

/// {i in I : <u_i^I, v> < 0} for a maximal simplex I.
Simplex negative_part(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& i,
                      const IntVec& vec);

/// Closed membership x in cone(gens) for an arbitrary generating set
/// (Caratheodory over independent subsets).
bool in_cone(const std::vector<IntVec>& gens, const RatVec& x);

/// Strict membership in the relative interior of a simplicial cone.
bool in_relative_interior(const std::vector<IntVec>& gens, const RatVec& x);

// Library fans.
MultiFan projective_space(int n);
/// Weighted projective model P(a_0..a_n): the projective fan together with
/// the rescaled edge vectors v_i' = a_i p_i.
std::pair<MultiFan, EdgeVectorSet> weighted_projective(const std::vector<Int>& a);
MultiFan hirzebruch(int k);
/// Face fan of the cube: 8 rays (+-1,+-1,+-1), 6 square maximal cones.
MultiFan cube_fan();
MultiFan multiplicity_multifan(MultiFan base, const Int& w);

/// Difference gluing: identifies boundary rays of `minus` with rays of `plus`
/// via the given map and flips the weights of `minus` to (0, w+). The two
/// identified boundary subcomplexes must carry equal cones.
MultiFan glue_difference(const MultiFan& plus, const MultiFan& minus,
                         const std::map<int, int>& minus_to_plus);

/// Ray map of glue_difference for bookkeeping on the minus side.
std::vector<int> glue_minus_ray_map(const MultiFan& plus, const MultiFan& minus,
                                    const std::map<int, int>& minus_to_plus);

}  // namespace mfel
