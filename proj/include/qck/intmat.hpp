#pragma once

// Dense integer matrices and the lattice normal forms built on them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qck/arith.hpp"

namespace qck::arith {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<BigInt> row(std::size_t i) const;
  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

using IntRow = std::vector<BigInt>;

// Row-style Hermite normal form of the full-rank lattice spanned by `rows`
// (vectors of length n).  `modulus` must be a positive multiple of the
// lattice determinant; containing modulus * Z^n is not enough.
// Returns the n x n upper-triangular basis with positive diagonal and the
// entries above each pivot reduced into [0, pivot).
IntMatrix hnf_mod(const std::vector<IntRow>& rows, std::size_t n, const BigInt& modulus);

// Plain Hermite normal form (no modulus).  Rank-deficient input yields the
// nonzero rows only.  Used for small matrices and as a cross-check.
IntMatrix hnf(const std::vector<IntRow>& rows, std::size_t n);

// Determinant of a square matrix by multi-modular elimination and CRT
// against the Hadamard bound.
BigInt determinant(const IntMatrix& m);

// Indices of a maximal set of linearly independent rows, chosen greedily in
// the given order (rank is computed modulo a large prime, which can only
// under-report rank).
std::vector<std::size_t> independent_rows(const std::vector<IntRow>& rows, std::size_t n,
                                          const std::vector<std::size_t>& order);

// Smith normal form D = U * A * V of a square nonsingular matrix.  Only the
// column transform V and its inverse are tracked.
struct SmithForm {
  std::vector<BigInt> diagonal;  // d_1 | d_2 | ... , all positive
  IntMatrix V;
  IntMatrix V_inv;
};
SmithForm smith(const IntMatrix& a);

}  // namespace qck::arith
