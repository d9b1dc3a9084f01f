#pragma once

#include <map>
#include <vector>

#include "mfel/matrix.hpp"
#include "mfel/rational.hpp"

namespace mfel {

/// One element of a finite quotient group, carried both as fractional
/// coordinates against the spanning edge vectors and as an integral
/// representative in the ambient lattice.
struct GroupElement {
  RatVec f;    ///< f_i in [0,1), one per spanning vector
  IntVec rep;  ///< canonical representative sum_i f_i v_i, in ambient coordinates
};

/// The finite abelian group L_K / L_{K,V} for a simplex K with edge vectors
/// {v_i}_{i in K}: the saturated lattice of the span modulo the sublattice
/// the chosen vectors generate.
class QuotientGroup {
 public:
  QuotientGroup() = default;
  QuotientGroup(std::vector<int> simplex, std::vector<GroupElement> elements);

  const std::vector<int>& simplex() const { return simplex_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  const GroupElement& identity() const { return elements_.front(); }

  /// Index of the element with the given fractional coordinates.
  std::size_t index_of(const RatVec& f) const;
  /// Group law: index of elements()[a] + elements()[b].
  std::size_t add(std::size_t a, std::size_t b) const;

  /// True iff all fractional coordinates of the element are nonzero
  /// (the part of the group seen by no proper face of the simplex).
  bool in_hat_subset(std::size_t idx) const;

 private:
  std::vector<int> simplex_;
  std::vector<GroupElement> elements_;
  std::map<RatVec, std::size_t> index_;
};

/// Exact dual basis of a linearly independent family: <u_i, v_j> = delta_ij.
/// For families of less than full rank the duals are the Moore-Penrose
/// solutions, i.e. they annihilate the orthogonal complement of the span.
/// Throws DependentVectors if the family is rank deficient.
std::vector<RatVec> dual_basis(const std::vector<IntVec>& vectors);

/// The group L_K / L_{K,V} for the simplex spanned by the given independent
/// edge vectors, with all elements enumerated. elements()[0] is the identity.
QuotientGroup saturate_and_quotient(const std::vector<int>& simplex,
                                    const std::vector<IntVec>& vectors);

/// Rotation number r in [0,1) of the character u defines on the group,
/// evaluated at element h: chi = e^{2 pi i r}. Requires <u, v_i> integral
/// for every spanning vector v_i; throws NotIntegralDual otherwise.
Rat character(const RatVec& u, const std::vector<IntVec>& vectors, const GroupElement& h);

/// Projection data for the quotient lattice L -> L / (L cap span{v_i}).
struct LatticeProjection {
  IntMat projection;  ///< (n-k) x n, surjective onto Z^(n-k)
  IntMat section;     ///< n x (n-k), projection * section = identity
};

/// Quotient of the ambient lattice by the saturated span of the given vectors.
LatticeProjection quotient_lattice(std::size_t ambient_rank, const std::vector<IntVec>& vectors);

}  // namespace mfel
