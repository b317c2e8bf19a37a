#include "k3fm/picard1.hpp"

#include <algorithm>
#include <numeric>

namespace k3fm {

namespace {

// Distinct primes of m with exponents, ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t m) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) m /= p, ++e;
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

int tau_primes(std::int64_t m) {
  if (m < 1) throw Error("tau of a nonpositive integer");
  if (m == 1) return 1;
  return static_cast<int>(factorize(m).size());
}

std::int64_t euler_phi(std::int64_t d) {
  if (d < 1) throw Error("phi of a nonpositive integer");
  std::int64_t r = d;
  for (auto [p, e] : factorize(d)) r = r / p * (p - 1);
  return r;
}

std::int64_t closed_count(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 1) throw Error("n and d must be positive");
  if (n % (d * d) != 0) return 0;
  std::int64_t m = n / (d * d);
  std::int64_t phi = euler_phi(d);
  if (d >= 3 && m == 1) return phi * ipow(2, tau_primes(m)) / 4;  // phi(d) even for d >= 3
  return phi * ipow(2, tau_primes(m) - 1);
}

std::vector<SigmaElement> sigma_set(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 1 || n % (d * d) != 0) throw DNotAdmissible();
  const std::int64_t m = n / (d * d);

  if (m == 1) {
    // Convention p_1 = e_1 = 1: the only subset is {1} with r = s = 1.
    return {SigmaElement{{1}, 1, 1}};
  }
  auto primes = factorize(m);
  const int t = static_cast<int>(primes.size());
  std::vector<SigmaElement> out;
  for (unsigned mask = 1; mask < (1u << t); ++mask) {
    std::int64_t r = 1;
    SigmaElement e;
    for (int i = 0; i < t; ++i)
      if (mask & (1u << i)) {
        e.sigma.push_back(i + 1);
        r *= ipow(primes[i].first, primes[i].second);
      }
    if (r * r < m) continue;  // defining inequality prod p^{2e} >= m
    e.r = r;
    e.s = m / r;
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t k_tilde(std::int64_t k, std::int64_t d, std::int64_t n) {
  if (d < 1 || n < 1) throw Error("d and n must be positive");
  std::int64_t cand = 1;
  if (d > 1) {
    std::int64_t k0 = ((k % d) + d) % d;
    if (std::gcd(k0, d) != 1) throw Error("k is not a unit mod d");
    cand = k0;
  }
  while (std::gcd(cand, 2 * n) != 1) cand += d;
  return cand;
}

MukaiPartner mukai_vector(const PicardOneProblem& p, const SigmaElement& sigma, std::int64_t k) {
  if (p.n < 1 || p.d < 1 || p.n % (p.d * p.d) != 0) throw DNotAdmissible();
  MukaiPartner mp;
  mp.n = p.n;
  mp.d = p.d;
  mp.sigma = sigma;
  mp.k = ((k % p.d) + p.d) % p.d;
  if (p.d == 1) mp.k = 1;
  mp.k_tilde = k_tilde(mp.k, p.d, p.n);
  mp.v_r = p.d * sigma.r;
  mp.v_c = mp.k_tilde;
  mp.v_s = mp.k_tilde * mp.k_tilde * p.d * sigma.s;
  mp.partner_ns_disc = 2 * sigma.r * sigma.s;
  mp.twist_order = p.d;

  // Construction-time invariants: isotropy, primitivity, divisibility = d.
  if (mukai_pairing(p.n, mp.v_r, mp.v_c, mp.v_s, mp.v_r, mp.v_c, mp.v_s) != 0)
    throw Error("Mukai vector not isotropic");
  if (std::gcd(std::gcd(mp.v_r, mp.v_c), mp.v_s) != 1)
    throw Error("Mukai vector not primitive");
  std::int64_t div = std::gcd(
      std::gcd(mukai_pairing(p.n, mp.v_r, mp.v_c, mp.v_s, 1, 0, 0),
               mukai_pairing(p.n, mp.v_r, mp.v_c, mp.v_s, 0, 1, 0)),
      mukai_pairing(p.n, mp.v_r, mp.v_c, mp.v_s, 0, 0, 1));
  if (std::abs(div) != p.d) throw Error("Mukai vector divisibility != d");
  return mp;
}

std::vector<MukaiPartner> list_partners(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 1 || n % (d * d) != 0) throw DNotAdmissible();
  auto sigmas = sigma_set(n, d);
  std::vector<std::int64_t> ks;
  if (d <= 2) {
    ks.push_back(1);
  } else {
    const bool square_case = (n == d * d);
    for (std::int64_t k = 1; k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      if (square_case && k > d - k) continue;  // representatives of units mod +-1
      ks.push_back(k);
    }
  }
  std::vector<MukaiPartner> out;
  PicardOneProblem p{n, d};
  for (const auto& sg : sigmas)
    for (auto k : ks) out.push_back(mukai_vector(p, sg, k));
  return out;
}

std::vector<int> lambda_sign_pattern(const SigmaElement& sigma, int tau_rs) {
  std::vector<int> signs(tau_rs, -1);
  for (int i : sigma.sigma) {
    if (i < 1 || i > tau_rs) throw Error("sigma index out of range");
    signs[i - 1] = 1;
  }
  return signs;
}

bool partner_distinct(const MukaiPartner& a, const MukaiPartner& b) {
  if (a.n != b.n || a.d != b.d) throw MismatchedProblem();
  if (a.sigma != b.sigma) return true;
  std::int64_t ka = a.k, kb = b.k;
  if (a.d >= 3 && a.n == a.d * a.d) {
    // anti-symplectic involution identifies k with -k
    ka = std::min(ka, a.d - ka);
    kb = std::min(kb, b.d - kb);
  }
  return ka != kb;
}

std::int64_t mukai_pairing(std::int64_t n, std::int64_t r1, std::int64_t c1, std::int64_t s1,
                           std::int64_t r2, std::int64_t c2, std::int64_t s2) {
  return c1 * c2 * 2 * n - r1 * s2 - r2 * s1;
}

nlohmann::ordered_json MukaiPartner::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["d"] = d;
  j["sigma"] = sigma.sigma;
  j["r"] = sigma.r;
  j["s"] = sigma.s;
  j["k"] = k;
  j["k_tilde"] = k_tilde;
  j["v"] = {v_r, v_c, v_s};
  j["partner_ns_disc"] = partner_ns_disc;
  j["twist_order"] = twist_order;
  return j;
}

}  // namespace k3fm
