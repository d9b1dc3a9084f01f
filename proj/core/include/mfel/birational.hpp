#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfel/multifan.hpp"
#include "mfel/sr_ring.hpp"

namespace mfel {

/// Subdivision-type morphism rho: Delta' -> Delta between multi-fans in the
/// same lattice, together with the edge-vector data the pullback and
/// push-forward depend on. `target` may be non-simplicial (triangulations).
struct BirationalMorphism {
  MultiFan source;  ///< Delta'
  MultiFan target;  ///< Delta
  EdgeVectorSet source_v;
  EdgeVectorSet target_v;
  std::vector<int> kappa;            ///< target ray -> source ray, C(i) = C'(kappa(i))
  std::map<Simplex, Simplex> rho;    ///< source simplex -> minimal target simplex/face
  RatMat a;                          ///< a[source ray][target ray], v_{i'} = sum a_{i'i} v_i

  const Simplex& rho_of(const Simplex& s) const;
  /// Source maximal cone indices lying over the given target maximal cone.
  std::vector<std::size_t> fiber(const Simplex& target_max) const;
};

/// Verifies the structural conditions of a morphism exactly, including the
/// cone-subdivision property (containment plus volume bookkeeping). Returns
/// all violations; empty means valid.
std::vector<std::string> validate_morphism(const BirationalMorphism& m);
void require_valid_morphism(const BirationalMorphism& m);

/// Star subdivision of every maximal cone containing i0 at an integral vector
/// in the relative interior of C(i0). Throws NotInteriorVector.
BirationalMorphism star_subdivide(const MultiFan& fan, const EdgeVectorSet& v, const Simplex& i0,
                                  const IntVec& v_new);

/// Identity morphism Delta -> Delta with a change of edge vectors.
BirationalMorphism rescale_morphism(const MultiFan& fan, const EdgeVectorSet& source_v,
                                    const EdgeVectorSet& target_v);

/// rho2 after rho1 (rho1: Delta'' -> Delta', rho2: Delta' -> Delta).
BirationalMorphism compose(const BirationalMorphism& rho2, const BirationalMorphism& rho1);

/// Pullback rho^*: ring homomorphism with rho^*(x_i) = sum a_{i'i} x_{i'}.
SRClass rho_pullback(const BirationalMorphism& m, const SRClass& x);
Divisor pullback_divisor(const BirationalMorphism& m, const Divisor& xi);

/// Push-forward rho_*: computed per maximal target cone through the
/// localization formula, certified polynomial and overlap-compatible, then
/// reassembled in the target Stanley-Reisner ring.
SRClass rho_pushforward(const BirationalMorphism& m, const SRClass& x);

/// The per-cone restriction tuple of rho_*(x) (indexed like target maximal).
RestrictionTuple rho_pushforward_tuple(const BirationalMorphism& m, const SRClass& x);

/// Triangulation of a general fan; kappa is the identity on rays and the
/// edge vectors are shared. strategy: deterministic pulling or placing by
/// the given ray order (identity order if empty).
enum class TriangulationStrategy { pulling, placing };
BirationalMorphism triangulate(const MultiFan& general, const EdgeVectorSet& v,
                               TriangulationStrategy strategy,
                               const std::vector<int>& ray_order = {});

}  // namespace mfel
