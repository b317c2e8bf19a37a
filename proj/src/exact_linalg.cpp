#include "k3fm/exact_linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace k3fm {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  a_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("ragged initializer list");
    for (long v : r) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error("dimension mismatch in matrix product");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& c) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t i) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) = -(*this)(k, i);
}

RatMatrix::RatMatrix(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
  a_.reserve(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a_.emplace_back(m(i, j));
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw Error("dimension mismatch in matrix product");
  RatMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r(i, j) += aik * o(k, j);
        r(i, j).canonicalize();
      }
    }
  return r;
}

namespace {

// Position of an entry of minimal nonzero absolute value in A[t.., t..],
// or nullopt if that block is zero.
bool find_pivot(const IntMatrix& A, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < A.rows(); ++i)
    for (std::size_t j = t; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Int v = abs(A(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& A) {
  SmithResult r{A, IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols())};
  IntMatrix& S = r.S;
  IntMatrix& U = r.U;
  IntMatrix& V = r.V;
  const std::size_t m = std::min(A.rows(), A.cols());

  for (std::size_t t = 0; t < m; ++t) {
    std::size_t pi, pj;
    if (!find_pivot(S, t, pi, pj)) break;
    S.swap_rows(t, pi);
    U.swap_rows(t, pi);
    S.swap_cols(t, pj);
    V.swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < S.rows(); ++i) {
        if (S(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (S(i, t) != 0) {
          S.swap_rows(t, i);
          U.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < S.cols(); ++j) {
        if (S(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (S(t, j) != 0) {
          S.swap_cols(t, j);
          V.swap_cols(t, j);
          dirty = true;
        }
      }
      if (!dirty) break;
    }

    // Make the pivot divide every remaining entry.
    for (;;) {
      bool fixed = true;
      for (std::size_t i = t + 1; i < S.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < S.cols() && fixed; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row(t, i, 1);
            U.add_row(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
      // Re-clear the row introduced above.
      for (;;) {
        bool dirty = false;
        for (std::size_t j = t + 1; j < S.cols(); ++j) {
          if (S(t, j) == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
          S.add_col(j, t, -q);
          V.add_col(j, t, -q);
          if (S(t, j) != 0) {
            S.swap_cols(t, j);
            V.swap_cols(t, j);
            dirty = true;
          }
        }
        for (std::size_t i = t + 1; i < S.rows(); ++i) {
          if (S(i, t) == 0) continue;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
          S.add_row(i, t, -q);
          U.add_row(i, t, -q);
          if (S(i, t) != 0) {
            S.swap_rows(t, i);
            U.swap_rows(t, i);
            dirty = true;
          }
        }
        if (!dirty) break;
      }
    }

    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return r;
}

HermiteResult hermite_normal_form(const IntMatrix& A) {
  HermiteResult r{A, IntMatrix::identity(A.rows())};
  IntMatrix& H = r.H;
  IntMatrix& U = r.U;
  std::size_t row = 0;
  for (std::size_t col = 0; col < H.cols() && row < H.rows(); ++col) {
    // Euclidean elimination in H[row.., col].
    for (;;) {
      std::size_t best = H.rows();
      for (std::size_t i = row; i < H.rows(); ++i) {
        if (H(i, col) == 0) continue;
        if (best == H.rows() || abs(H(i, col)) < abs(H(best, col))) best = i;
      }
      if (best == H.rows()) break;  // column is zero below
      if (best != row) {
        H.swap_rows(row, best);
        U.swap_rows(row, best);
      }
      bool cleared = true;
      for (std::size_t i = row + 1; i < H.rows(); ++i) {
        if (H(i, col) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
        H.add_row(i, row, -q);
        U.add_row(i, row, -q);
        if (H(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (row < H.rows() && H(row, col) != 0) {
      if (H(row, col) < 0) {
        H.negate_row(row);
        U.negate_row(row);
      }
      // Reduce entries above the pivot into [0, pivot).
      for (std::size_t i = 0; i < row; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
        if (q != 0) {
          H.add_row(i, row, -q);
          U.add_row(i, row, -q);
        }
      }
      ++row;
    }
  }
  return r;
}

Int determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw Error("determinant of non-square matrix");
  // Fraction-free Gaussian elimination (Bareiss).
  IntMatrix M = A;
  const std::size_t n = M.rows();
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
      }
    prev = M(k, k);
  }
  return n == 0 ? Int(1) : sign * M(n - 1, n - 1);
}

RatMatrix rational_inverse(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw Error("inverse of non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix M = A;
  RatMatrix I = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == 0) ++p;
    if (p == n) throw SingularMatrix();
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(M(k, j), M(p, j));
        std::swap(I(k, j), I(p, j));
      }
    Rat inv = 1 / M(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      M(k, j) *= inv;
      M(k, j).canonicalize();
      I(k, j) *= inv;
      I(k, j).canonicalize();
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || M(i, k) == 0) continue;
      Rat c = M(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        M(i, j) -= c * M(k, j);
        M(i, j).canonicalize();
        I(i, j) -= c * I(k, j);
        I(i, j).canonicalize();
      }
    }
  }
  return I;
}

std::pair<int, int> signature(const IntMatrix& G) {
  if (!G.is_symmetric()) throw NotSymmetric();
  const std::size_t n = G.rows();
  RatMatrix M(G);
  int pos = 0, neg = 0;
  // Symmetric congruence diagonalization over Q.
  for (std::size_t k = 0; k < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = n;
      for (std::size_t j = k + 1; j < n; ++j)
        if (M(k, j) != 0) {
          p = j;
          break;
        }
      if (p == n) throw SingularMatrix("degenerate symmetric form");
      // row/col k += s * row/col p gives diagonal M(p,p) + 2s*M(k,p); one of
      // s = 1, -1 is guaranteed nonzero since M(k,p) != 0.
      Rat s = (M(p, p) + 2 * M(k, p) != 0) ? Rat(1) : Rat(-1);
      for (std::size_t j = 0; j < n; ++j) M(k, j) += s * M(p, j);
      for (std::size_t i = 0; i < n; ++i) M(i, k) += s * M(i, p);
    }
    Rat piv = M(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      Rat c = M(i, k) / piv;
      c.canonicalize();
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        M(i, j) -= c * M(k, j);
        M(i, j).canonicalize();
      }
      for (std::size_t i2 = 0; i2 < n; ++i2) {
        M(i2, i) -= c * M(i2, k);
        M(i2, i).canonicalize();
      }
    }
  }
  // Recount cleanly from the diagonal.
  pos = neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (M(k, k) > 0)
      ++pos;
    else if (M(k, k) < 0)
      ++neg;
    else
      throw SingularMatrix("degenerate symmetric form");
  }
  return {pos, neg};
}

}  // namespace k3fm
