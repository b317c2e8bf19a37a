#pragma once

// The fully explicit Picard-number-1 case: closed-form partner counts,
// the Sigma set, k-tilde selection, Mukai vectors and distinctness logic
// for NS(S) = ZH with (H, H) = 2n.

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "k3fm/errors.hpp"

namespace k3fm {

struct PicardOneProblem {
  std::int64_t n = 1;  // (H, H) = 2n
  std::int64_t d = 1;  // twist order, d^2 | n
};

struct SigmaElement {
  std::vector<int> sigma;  // 1-based indices into the distinct primes of n/d^2
  std::int64_t r = 1;      // prod_{i in sigma} p_i^{e_i}
  std::int64_t s = 1;      // (n/d^2) / r, coprime to r

  bool operator==(const SigmaElement&) const = default;
  auto operator<=>(const SigmaElement&) const = default;
};

// Mukai vector v = r*(1,0,0) + c*H + s*(0,0,1) and the derived partner data.
struct MukaiPartner {
  std::int64_t n = 1, d = 1;
  SigmaElement sigma;
  std::int64_t k = 1;        // unit mod d
  std::int64_t k_tilde = 1;  // smallest lift of k coprime to 2n
  std::int64_t v_r = 0, v_c = 0, v_s = 0;
  std::int64_t partner_ns_disc = 0;  // (H_{sigma,k}, H_{sigma,k}) = 2*r*s
  std::int64_t twist_order = 1;

  nlohmann::ordered_json to_json() const;
};

// Number of distinct prime factors, with tau(1) = 1.
int tau_primes(std::int64_t m);
std::int64_t euler_phi(std::int64_t d);

// 0 when d^2 does not divide n; otherwise phi(d) * 2^(tau(n/d^2) - 2) when
// d >= 3 and d^2 = n, phi(d) * 2^(tau(n/d^2) - 1) otherwise.
std::int64_t closed_count(std::int64_t n, std::int64_t d);

// All nonempty subsets sigma of the prime indices of n/d^2 with
// prod_{i in sigma} p_i^(2 e_i) >= n/d^2, sorted. Throws DNotAdmissible.
std::vector<SigmaElement> sigma_set(std::int64_t n, std::int64_t d);

// Smallest positive integer congruent to k mod d and coprime to 2n.
std::int64_t k_tilde(std::int64_t k, std::int64_t d, std::int64_t n);

MukaiPartner mukai_vector(const PicardOneProblem& p, const SigmaElement& sigma, std::int64_t k);

// One partner per class: Sigma x (Z/d)^x, with k identified with -k when
// d >= 3 and d^2 = n (representatives min(k, d-k)).
std::vector<MukaiPartner> list_partners(std::int64_t n, std::int64_t d);

// Signs (+1 iff i in sigma) indexed by the distinct primes of r*s; the
// combinatorial datum behind partner distinctness.
std::vector<int> lambda_sign_pattern(const SigmaElement& sigma, int tau_rs);

// Non-isomorphism of two partners of the same (n, d) problem.
bool partner_distinct(const MukaiPartner& a, const MukaiPartner& b);

// Mukai pairing ((r,cH,s),(r',c'H,s')) = c c' 2n - r s' - r' s.
std::int64_t mukai_pairing(std::int64_t n, std::int64_t r1, std::int64_t c1, std::int64_t s1,
                           std::int64_t r2, std::int64_t c2, std::int64_t s2);

}  // namespace k3fm
