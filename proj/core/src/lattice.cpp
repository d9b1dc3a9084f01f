#include "mfel/lattice.hpp"

#include <algorithm>

#include "mfel/errors.hpp"

namespace mfel {

QuotientGroup::QuotientGroup(std::vector<int> simplex, std::vector<GroupElement> elements)
    : simplex_(std::move(simplex)), elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i].f] = i;
}

std::size_t QuotientGroup::index_of(const RatVec& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) throw Error("fractional coordinates do not name a group element");
  return it->second;
}

std::size_t QuotientGroup::add(std::size_t a, std::size_t b) const {
  RatVec f(elements_[a].f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = frac_mod1(elements_[a].f[i] + elements_[b].f[i]);
  return index_of(f);
}

bool QuotientGroup::in_hat_subset(std::size_t idx) const {
  for (const auto& fi : elements_[idx].f)
    if (fi == 0) return false;
  return true;
}

std::vector<RatVec> dual_basis(const std::vector<IntVec>& vectors) {
  if (vectors.empty()) return {};
  std::size_t n = vectors[0].size(), k = vectors.size();
  RatMat b(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) b(i, j) = Rat(vectors[j][i]);
  if (b.rank() != k) throw DependentVectors();
  // Rows of (B^T B)^{-1} B^T pair to delta_ij against the columns of B and
  // vanish on the orthogonal complement of their span.
  RatMat bt = b.transpose();
  RatMat gram = bt * b;
  RatMat duals = gram.inverse() * bt;
  std::vector<RatVec> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = duals.row(i);
  return out;
}

QuotientGroup saturate_and_quotient(const std::vector<int>& simplex,
                                    const std::vector<IntVec>& vectors) {
  std::size_t k = vectors.size();
  if (k == 0) {
    return QuotientGroup(simplex, {GroupElement{{}, {}}});
  }
  std::size_t n = vectors[0].size();
  IntMat b = IntMat::from_columns(vectors);
  if (RatMat(b).rank() != k) throw DependentVectors();

  // A: coordinates of the v_i in a basis of the saturated lattice L_K
  // (the first k columns of U^{-1} for the Smith form U b V = D).
  SmithDecomposition snf = smith_normal_form(b);
  IntMat ub = snf.U * b;
  IntMat a(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a(i, j) = ub(i, j);

  // Z^k / A Z^k enumerated through the Smith form of A.
  SmithDecomposition qs = smith_normal_form(a);
  IntMat qUinv = unimodular_inverse(qs.U);
  IntVec diag(k);
  for (std::size_t i = 0; i < k; ++i) diag[i] = qs.D(i, i);
  RatMat ainv = RatMat(a).inverse();

  std::vector<GroupElement> elements;
  IntVec counter(k, Int(0));
  for (;;) {
    IntVec r = qUinv * counter;  // coset representative in W-coordinates
    RatVec f = ainv * to_rat(r);
    for (auto& fi : f) fi = frac_mod1(fi);
    // rep = sum_i f_i v_i; integral because A f is integral.
    RatVec rep_q(n, Rat(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < n; ++i) rep_q[i] += f[j] * Rat(vectors[j][i]);
    IntVec rep(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_integer(rep_q[i])) throw Error("internal: coset representative not integral");
      rep[i] = rep_q[i].get_num();
    }
    elements.push_back(GroupElement{std::move(f), std::move(rep)});
    // Odometer over prod [0, diag_i).
    std::size_t pos = 0;
    while (pos < k) {
      counter[pos] += 1;
      if (counter[pos] < diag[pos]) break;
      counter[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  // The identity (all f = 0) comes from counter = 0 and is first by construction.
  std::sort(elements.begin() + 1, elements.end(),
            [](const GroupElement& x, const GroupElement& y) { return x.f < y.f; });
  return QuotientGroup(simplex, std::move(elements));
}

Rat character(const RatVec& u, const std::vector<IntVec>& vectors, const GroupElement& h) {
  Rat r = 0;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    Rat pairing = dot(u, vectors[j]);
    if (!is_integer(pairing)) throw NotIntegralDual();
    r += h.f[j] * pairing;
  }
  return frac_mod1(r);
}

LatticeProjection quotient_lattice(std::size_t ambient_rank, const std::vector<IntVec>& vectors) {
  std::size_t k = vectors.size();
  if (k == 0) {
    return LatticeProjection{IntMat::identity(ambient_rank), IntMat::identity(ambient_rank)};
  }
  IntMat b = IntMat::from_columns(vectors);
  std::size_t r = RatMat(b).rank();
  SmithDecomposition snf = smith_normal_form(b);
  IntMat uinv = unimodular_inverse(snf.U);
  std::size_t q = ambient_rank - r;
  IntMat proj(q, ambient_rank), sect(ambient_rank, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) proj(i, j) = snf.U(r + i, j);
  for (std::size_t i = 0; i < ambient_rank; ++i)
    for (std::size_t j = 0; j < q; ++j) sect(i, j) = uinv(i, r + j);
  return LatticeProjection{proj, sect};
}

}  // namespace mfel
