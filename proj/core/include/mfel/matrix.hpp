#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mfel/rational.hpp"

namespace mfel {

/// Dense matrix over arbitrary-precision integers.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  /// Matrix whose columns are the given vectors.
  static IntMat from_columns(const std::vector<IntVec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMat operator*(const IntMat& other) const;
  IntVec operator*(const IntVec& v) const;
  IntMat transpose() const;
  bool operator==(const IntMat& other) const = default;

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;

  /// Determinant by fraction-free (Bareiss) elimination. Square only.
  Int det() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

/// Dense matrix over rationals with exact elimination routines.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
  explicit RatMat(const IntMat& m);

  static RatMat identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static RatMat from_columns(const std::vector<RatVec>& cols);
  static RatMat from_rows(const std::vector<RatVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatMat operator*(const RatMat& other) const;
  RatVec operator*(const RatVec& v) const;
  RatMat transpose() const;
  bool operator==(const RatMat& other) const = default;

  RatVec row(std::size_t i) const;
  RatVec col(std::size_t j) const;

  std::size_t rank() const;
  /// Inverse of a square nonsingular matrix. Throws DependentVectors if singular.
  RatMat inverse() const;
  /// One solution of A x = b, or nullopt if inconsistent.
  std::optional<RatVec> solve(const RatVec& b) const;
  /// Basis of the right null space.
  std::vector<RatVec> nullspace() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_k >= 0.
struct SmithDecomposition {
  IntMat U, D, V;
  /// Nonzero diagonal entries of D.
  IntVec diagonal() const;
};

/// Smith normal form with deterministic minimal-absolute-value pivoting.
SmithDecomposition smith_normal_form(const IntMat& m);

/// Inverse of a unimodular integer matrix, as an integer matrix.
IntMat unimodular_inverse(const IntMat& u);

/// One interior rational point of {x : sign_j * <normals_j, x> > 0 for all j},
/// or nullopt if the open cone is empty. Exact Fourier-Motzkin elimination.
std::optional<RatVec> strict_cone_point(const std::vector<IntVec>& normals,
                                        const std::vector<int>& signs);

}  // namespace mfel
