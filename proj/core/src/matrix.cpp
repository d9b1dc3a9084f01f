#include "mfel/matrix.hpp"

#include <algorithm>
#include <cstdlib>

#include "mfel/errors.hpp"

namespace mfel {

IntMat IntMat::from_columns(const std::vector<IntVec>& cols) {
  if (cols.empty()) return IntMat(0, 0);
  IntMat m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

IntMat IntMat::operator*(const IntMat& other) const {
  IntMat r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += aik * other(k, j);
    }
  return r;
}

IntVec IntMat::operator*(const IntVec& v) const {
  IntVec r(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

IntMat IntMat::transpose() const {
  IntMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntVec IntMat::row(std::size_t i) const {
  IntVec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

IntVec IntMat::col(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Int IntMat::det() const {
  if (rows_ != cols_) throw Error("det() of a non-square matrix");
  std::size_t n = rows_;
  if (n == 0) return 1;
  IntMat a = *this;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

RatMat::RatMat(const IntMat& m) : rows_(m.rows()), cols_(m.cols()), a_(m.rows() * m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rat(m(i, j));
}

RatMat RatMat::from_columns(const std::vector<RatVec>& cols) {
  if (cols.empty()) return RatMat(0, 0);
  RatMat m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

RatMat RatMat::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return RatMat(0, 0);
  RatMat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

RatMat RatMat::operator*(const RatMat& other) const {
  RatMat r(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += aik * other(k, j);
    }
  return r;
}

RatVec RatMat::operator*(const RatVec& v) const {
  RatVec r(rows_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

RatVec RatMat::row(std::size_t i) const {
  RatVec r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

RatVec RatMat::col(std::size_t j) const {
  RatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(RatMat& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t RatMat::rank() const {
  RatMat a = *this;
  return echelon(a).size();
}

RatMat RatMat::inverse() const {
  if (rows_ != cols_) throw Error("inverse() of a non-square matrix");
  RatMat aug(rows_, 2 * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_ + i) = 1;
  }
  auto pivots = echelon(aug);
  if (pivots.size() != rows_ || pivots.back() >= cols_) throw DependentVectors("singular matrix");
  RatMat inv(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
  return inv;
}

std::optional<RatVec> RatMat::solve(const RatVec& b) const {
  RatMat aug(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_) = b[i];
  }
  auto pivots = echelon(aug);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  RatVec x(cols_, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
  return x;
}

std::vector<RatVec> RatMat::nullspace() const {
  RatMat a = *this;
  auto pivots = echelon(a);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols_, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

IntVec SmithDecomposition::diagonal() const {
  IntVec d;
  std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i)
    if (D(i, i) != 0) d.push_back(D(i, i));
  return d;
}

namespace {

Int int_abs(const Int& x) {
  Int a;
  mpz_abs(a.get_mpz_t(), x.get_mpz_t());
  return a;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  IntMat a = m;
  IntMat u = IntMat::identity(rows);
  IntMat v = IntMat::identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t c = 0; c < cols; ++c) a(dst, c) += f * a(src, c);
    for (std::size_t c = 0; c < rows; ++c) u(dst, c) += f * u(src, c);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t r = 0; r < rows; ++r) a(r, dst) += f * a(r, src);
    for (std::size_t r = 0; r < cols; ++r) v(r, dst) += f * v(r, src);
  };

  std::size_t k = std::min(rows, cols);
  for (std::size_t t = 0; t < k; ++t) {
    for (;;) {
      // Minimal-absolute-value nonzero pivot in the trailing block.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          if (!found || int_abs(a(i, j)) < int_abs(a(pi, pj))) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        t = k;  // trailing block is zero
        break;
      }
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols && divisible; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(t, i, 1);
            divisible = false;
          }
      if (divisible) break;
    }
    if (t >= k) break;
  }
  for (std::size_t t = 0; t < k; ++t) {
    if (a(t, t) < 0) {
      for (std::size_t c = t; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return SmithDecomposition{u, a, v};
}

IntMat unimodular_inverse(const IntMat& u) {
  RatMat inv = RatMat(u).inverse();
  IntMat out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (!is_integer(inv(i, j))) throw Error("matrix is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

namespace {

// System of strict homogeneous inequalities <c, x> > 0, c rational rows.
// Eliminates the last variable (Fourier-Motzkin) and back-substitutes.
std::optional<RatVec> fm_solve(std::vector<RatVec> rows, std::size_t nvars) {
  if (nvars == 0) {
    // Only constant rows remain; representable system is feasible iff no row exists
    // (a nonempty row would read 0 > 0).
    return rows.empty() ? std::optional<RatVec>(RatVec{}) : std::nullopt;
  }
  if (nvars == 1) {
    bool pos = false, neg = false;
    for (const auto& r : rows) {
      if (r[0] > 0) pos = true;
      else if (r[0] < 0) neg = true;
      else return std::nullopt;  // 0 > 0
    }
    if (pos && neg) return std::nullopt;
    RatVec x{Rat(neg ? -1 : 1)};
    return x;
  }
  std::size_t last = nvars - 1;
  std::vector<RatVec> zero, pos, neg;
  for (auto& r : rows) {
    if (r[last] == 0) {
      r.pop_back();
      zero.push_back(std::move(r));
    } else if (r[last] > 0) {
      pos.push_back(std::move(r));
    } else {
      neg.push_back(std::move(r));
    }
  }
  std::vector<RatVec> reduced = zero;
  for (const auto& p : pos)
    for (const auto& n : neg) {
      // p[last] * n - n[last] * p eliminates x_last; strict + strict -> strict.
      RatVec comb(last);
      for (std::size_t j = 0; j < last; ++j) comb[j] = p[last] * n[j] - n[last] * p[j];
      bool nonzero = false;
      for (const auto& x : comb)
        if (x != 0) {
          nonzero = true;
          break;
        }
      if (!nonzero) return std::nullopt;  // derived 0 > 0
      reduced.push_back(std::move(comb));
    }
  auto sub = fm_solve(std::move(reduced), last);
  if (!sub) return std::nullopt;
  RatVec x = *sub;
  x.push_back(Rat(0));
  // Bounds for the last coordinate from the sign-split rows.
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
  for (const auto& p : pos) {
    Rat rest = 0;
    for (std::size_t j = 0; j < last; ++j) rest += p[j] * x[j];
    Rat bound = -rest / p[last];  // x_last > bound
    if (!has_lo || bound > lo) lo = bound, has_lo = true;
  }
  for (const auto& n : neg) {
    Rat rest = 0;
    for (std::size_t j = 0; j < last; ++j) rest += n[j] * x[j];
    Rat bound = -rest / n[last];  // x_last < bound
    if (!has_hi || bound < hi) hi = bound, has_hi = true;
  }
  if (has_lo && has_hi) {
    if (!(lo < hi)) return std::nullopt;  // should not happen after elimination
    x[last] = (lo + hi) / 2;
  } else if (has_lo) {
    x[last] = lo + 1;
  } else if (has_hi) {
    x[last] = hi - 1;
  }
  return x;
}

}  // namespace

std::optional<RatVec> strict_cone_point(const std::vector<IntVec>& normals,
                                        const std::vector<int>& signs) {
  if (normals.empty()) return RatVec{};
  std::size_t n = normals[0].size();
  std::vector<RatVec> rows;
  rows.reserve(normals.size());
  for (std::size_t j = 0; j < normals.size(); ++j) {
    RatVec r(n);
    for (std::size_t c = 0; c < n; ++c) r[c] = Rat(normals[j][c]) * signs[j];
    rows.push_back(std::move(r));
  }
  return fm_solve(std::move(rows), n);
}

}  // namespace mfel
