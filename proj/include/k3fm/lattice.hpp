#pragma once

// Even nondegenerate lattices as integer Gram matrices, with construction
// expressions, named standard lattices, discriminant-form extraction and
// Nikulin's computable genus criterion.

#include <memory>
#include <string>
#include <vector>

#include "k3fm/discform.hpp"
#include "k3fm/exact_linalg.hpp"

namespace k3fm {

// Construction expression. Direct sums are kept flattened; LK3 elaborates
// to U + U + U + E8 + E8 so that U-containment is visible structurally.
struct LatticeExpr {
  enum class Kind { U, E8, RankOne, Gram, DirectSum, Rescale };
  Kind kind;
  long param = 0;  // square 2m for RankOne, scale factor for Rescale
  std::vector<std::shared_ptr<const LatticeExpr>> children;
};

class EvenLattice {
 public:
  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  std::pair<int, int> signature() const { return sig_; }
  const std::shared_ptr<const LatticeExpr>& expr() const { return expr_; }
  Int det() const { return determinant(gram_); }

  friend EvenLattice make_lattice(const IntMatrix& gram,
                                  std::shared_ptr<const LatticeExpr> expr);

 private:
  IntMatrix gram_;
  std::pair<int, int> sig_;
  std::shared_ptr<const LatticeExpr> expr_;
};

// Validates symmetry, even diagonal, nondegeneracy.
EvenLattice make_lattice(const IntMatrix& gram,
                         std::shared_ptr<const LatticeExpr> expr = nullptr);

// "U", "E8" (negative definite), "Lambda_K3" / "LK3", "Lambda_K3_tilde".
EvenLattice named(const std::string& name);

EvenLattice rank_one(long square);  // <2m>, m != 0
EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b);
EvenLattice rescale(const EvenLattice& L, long t);

// Discriminant form D_L = L^dual / L with generator coordinates in L (x) Q:
// column i of gens is the rational coordinate vector of generator i.
struct DiscFormData {
  DiscriminantForm form;
  RatMatrix gens;  // rank x k
};
DiscFormData discriminant_form(const EvenLattice& L);

bool is_two_elementary(const EvenLattice& L);

// l(D): number of nontrivial invariant factors.
std::size_t min_generators(const DiscriminantForm& D);

// True iff L is indefinite with rank >= l(D_L) + 2; then the genus of L is
// a singleton and O(L) -> O(D_L) is surjective.
bool nikulin_singleton(const EvenLattice& L);

// Structural check on the construction expression: a top-level unrescaled
// U summand after flattening direct sums.
bool contains_u_summand(const EvenLattice& L);

// Expression grammar (CLI / file input):
//   expr := term ('+' term)*
//   term := atom | atom '(' int ')'          rescale
//   atom := 'U' | 'E8' | 'LK3' | '<' int '>' | 'gram:' <path>
EvenLattice parse_lattice_expr(const std::string& text);

}  // namespace k3fm
