#pragma once

// Finite quadratic forms (D, q): element arithmetic, isotropic elements,
// brute-force orthogonal groups, orbits and double cosets.

#include <cstdint>
#include <optional>
#include <vector>

#include "k3fm/exact_linalg.hpp"

namespace k3fm {

// Element of a DiscriminantForm in invariant-factor coordinates,
// coeffs[i] in Z/d_i reduced to [0, d_i).
struct DiscElement {
  std::vector<std::int64_t> coeffs;

  bool operator==(const DiscElement&) const = default;
  auto operator<=>(const DiscElement&) const = default;
};

// Finite Abelian group (Z/d_1) x ... x (Z/d_k), d_i | d_{i+1}, d_i >= 2,
// with q: D -> Q/2Z and b: D x D -> Q/Z given on the generators.
// q-values are kept in [0, 2), b-values in [0, 1).
class DiscriminantForm {
 public:
  DiscriminantForm() = default;  // trivial group
  DiscriminantForm(std::vector<std::int64_t> factors, std::vector<Rat> q_gens,
                   std::vector<std::vector<Rat>> b_gens);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  const std::vector<Rat>& q_gens() const { return q_gens_; }
  const std::vector<std::vector<Rat>>& b_gens() const { return b_gens_; }

  std::size_t num_generators() const { return factors_.size(); }
  Int size() const;
  bool is_trivial() const { return factors_.empty(); }

  DiscElement zero() const { return DiscElement{std::vector<std::int64_t>(factors_.size(), 0)}; }
  DiscElement reduce(const std::vector<std::int64_t>& raw) const;
  DiscElement add(const DiscElement& x, const DiscElement& y) const;
  DiscElement negate(const DiscElement& x) const;
  DiscElement scale(std::int64_t k, const DiscElement& x) const;

  bool operator==(const DiscriminantForm&) const = default;

 private:
  std::vector<std::int64_t> factors_;
  std::vector<Rat> q_gens_;                // mod 2Z
  std::vector<std::vector<Rat>> b_gens_;   // mod Z, symmetric, diag == q mod 1
};

// Isometry of a DiscriminantForm (or between two), stored as the images
// of the source generators.
struct FiniteIsometry {
  std::vector<DiscElement> images;

  bool operator==(const FiniteIsometry&) const = default;
  auto operator<=>(const FiniteIsometry&) const = default;
};

inline constexpr std::int64_t kDefaultGroupSizeCap = 10000;

Rat q_value(const DiscriminantForm& D, const DiscElement& x);
Rat b_value(const DiscriminantForm& D, const DiscElement& x, const DiscElement& y);
std::int64_t element_order(const DiscriminantForm& D, const DiscElement& x);

// All elements of D, in lexicographic coefficient order.
std::vector<DiscElement> all_elements(const DiscriminantForm& D,
                                      std::int64_t cap = kDefaultGroupSizeCap);

// I^d(D): elements of exact order d with q = 0 in Q/2Z, sorted.
std::vector<DiscElement> isotropic_elements(const DiscriminantForm& D, std::int64_t d);

DiscElement apply(const DiscriminantForm& D, const FiniteIsometry& f, const DiscElement& x);
// (f o g): first g, then f.
FiniteIsometry compose(const DiscriminantForm& D, const FiniteIsometry& f,
                       const FiniteIsometry& g);
FiniteIsometry identity_isometry(const DiscriminantForm& D);
FiniteIsometry negation_isometry(const DiscriminantForm& D);

// Full O(D, q) by exhaustive search; sorted. Throws TooLarge above the cap.
std::vector<FiniteIsometry> isometry_group(const DiscriminantForm& D,
                                           std::int64_t cap = kDefaultGroupSizeCap);

// Some q-preserving isomorphism D1 -> D2, or nullopt.
std::optional<FiniteIsometry> is_isometric(const DiscriminantForm& D1,
                                           const DiscriminantForm& D2,
                                           std::int64_t cap = kDefaultGroupSizeCap);

// (D, -q).
DiscriminantForm negate_form(const DiscriminantForm& D);

// Orthogonal sum, renormalized to an invariant-factor chain.
DiscriminantForm direct_sum(const DiscriminantForm& D1, const DiscriminantForm& D2);

// Lexicographically-least representative per orbit of G acting on S.
// Throws NotAGroup if G is not closed under composition.
std::vector<DiscElement> orbits(const DiscriminantForm& D,
                                const std::vector<FiniteIsometry>& G,
                                const std::vector<DiscElement>& S);

// #(A \ G / B). A and B must be sublists of G. Throws NotSubgroup.
std::int64_t double_coset_count(const DiscriminantForm& D,
                                const std::vector<FiniteIsometry>& G,
                                const std::vector<FiniteIsometry>& A,
                                const std::vector<FiniteIsometry>& B);

// Presentation reduction: a finite Abelian group generated by m abstract
// generators subject to the columns of R (m x r), with q/b known on the
// generators, renormalized to invariant-factor form. Used by the lattice
// and overlattice constructions and by direct_sum.
struct ReducedPresentation {
  DiscriminantForm form;
  // new generator i = sum_j expr(j, i) * old generator j
  IntMatrix expr;
};
ReducedPresentation reduce_presentation(const IntMatrix& R, const std::vector<Rat>& q_old,
                                        const std::vector<std::vector<Rat>>& b_old);

// Canonical residues.
Rat mod2(const Rat& x);
Rat mod1(const Rat& x);

}  // namespace k3fm
