#pragma once

// Exact integer / rational linear algebra on small dense matrices.
// Everything is arbitrary precision via GMP; no floating point anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "k3fm/errors.hpp"

namespace k3fm {

using Int = mpz_class;
using Rat = mpq_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const IntMatrix& o) const = default;

  bool is_symmetric() const;
  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& o) const;

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += c * row j
  void add_row(std::size_t i, std::size_t j, const Int& c);
  void add_col(std::size_t i, std::size_t j, const Int& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t i);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
  explicit RatMatrix(const IntMatrix& m);

  static RatMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const RatMatrix& o) const = default;

  RatMatrix operator*(const RatMatrix& o) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

struct SmithResult {
  IntMatrix S;  // diagonal, d1 | d2 | ..., entries >= 0
  IntMatrix U;  // unimodular, U * A * V = S
  IntMatrix V;  // unimodular
};

struct HermiteResult {
  IntMatrix H;  // row-echelon Hermite form, U * A = H
  IntMatrix U;  // unimodular
};

// U * A * V = S with S = diag(d1, d2, ...), d1 | d2 | ..., di >= 0.
SmithResult smith_normal_form(const IntMatrix& A);

// U * A = H with H in row HNF: positive pivots, entries above a pivot
// reduced into [0, pivot).
HermiteResult hermite_normal_form(const IntMatrix& A);

Int determinant(const IntMatrix& A);

// Throws SingularMatrix on det = 0.
RatMatrix rational_inverse(const RatMatrix& A);

// (positive, negative) eigenvalue counts of a symmetric nonsingular integer
// matrix, by exact rational congruence diagonalization.
std::pair<int, int> signature(const IntMatrix& G);

}  // namespace k3fm
