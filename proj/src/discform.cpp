#include "k3fm/discform.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace k3fm {

Rat mod2(const Rat& x) {
  Rat two(2);
  Rat q = x / two;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rat r = x - Rat(fl) * two;
  r.canonicalize();
  return r;
}

Rat mod1(const Rat& x) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rat r = x - Rat(fl);
  r.canonicalize();
  return r;
}

DiscriminantForm::DiscriminantForm(std::vector<std::int64_t> factors, std::vector<Rat> q_gens,
                                   std::vector<std::vector<Rat>> b_gens)
    : factors_(std::move(factors)), q_gens_(std::move(q_gens)), b_gens_(std::move(b_gens)) {
  const std::size_t k = factors_.size();
  if (q_gens_.size() != k || b_gens_.size() != k)
    throw Error("generator data size mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    if (factors_[i] < 2) throw Error("invariant factor < 2");
    if (i + 1 < k && factors_[i + 1] % factors_[i] != 0)
      throw Error("invariant factors do not form a divisor chain");
    q_gens_[i] = mod2(q_gens_[i]);
    if (b_gens_[i].size() != k) throw Error("b matrix not square");
    for (std::size_t j = 0; j < k; ++j) b_gens_[i][j] = mod1(b_gens_[i][j]);
  }
  for (std::size_t i = 0; i < k; ++i) {
    // d_i * q_i in Z (evenness of any integral lift), d_i * b_ij in Z,
    // b symmetric with diagonal q mod 1.
    if (mod1(Rat(factors_[i]) * q_gens_[i]) != 0) throw Error("q value has bad denominator");
    if (mod2(Rat(factors_[i]) * Rat(factors_[i]) * q_gens_[i]) != 0)
      throw Error("q value inconsistent with generator order");
    for (std::size_t j = 0; j < k; ++j) {
      if (b_gens_[i][j] != b_gens_[j][i]) throw Error("b matrix not symmetric");
      if (mod1(Rat(factors_[i]) * b_gens_[i][j]) != 0) throw Error("b value has bad denominator");
    }
    if (b_gens_[i][i] != mod1(q_gens_[i])) throw Error("b diagonal inconsistent with q");
  }
}

Int DiscriminantForm::size() const {
  Int s = 1;
  for (auto d : factors_) s *= d;
  return s;
}

DiscElement DiscriminantForm::reduce(const std::vector<std::int64_t>& raw) const {
  if (raw.size() != factors_.size()) throw Error("element coordinate size mismatch");
  DiscElement x;
  x.coeffs.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::int64_t c = raw[i] % factors_[i];
    if (c < 0) c += factors_[i];
    x.coeffs[i] = c;
  }
  return x;
}

DiscElement DiscriminantForm::add(const DiscElement& x, const DiscElement& y) const {
  std::vector<std::int64_t> raw(factors_.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = x.coeffs[i] + y.coeffs[i];
  return reduce(raw);
}

DiscElement DiscriminantForm::negate(const DiscElement& x) const {
  std::vector<std::int64_t> raw(factors_.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = -x.coeffs[i];
  return reduce(raw);
}

DiscElement DiscriminantForm::scale(std::int64_t k, const DiscElement& x) const {
  std::vector<std::int64_t> raw(factors_.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::int64_t c = k % factors_[i];
    raw[i] = c * x.coeffs[i];
  }
  return reduce(raw);
}

Rat q_value(const DiscriminantForm& D, const DiscElement& x) {
  Rat acc(0);
  const auto& q = D.q_gens();
  const auto& b = D.b_gens();
  for (std::size_t i = 0; i < q.size(); ++i) {
    Int c(static_cast<long>(x.coeffs[i]));
    acc += Rat(c * c) * q[i];
    for (std::size_t j = i + 1; j < q.size(); ++j)
      acc += Rat(2 * c * Int(static_cast<long>(x.coeffs[j]))) * b[i][j];
  }
  acc.canonicalize();
  return mod2(acc);
}

Rat b_value(const DiscriminantForm& D, const DiscElement& x, const DiscElement& y) {
  Rat acc(0);
  const auto& b = D.b_gens();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      acc += Rat(Int(static_cast<long>(x.coeffs[i])) * Int(static_cast<long>(y.coeffs[j]))) *
             b[i][j];
  acc.canonicalize();
  return mod1(acc);
}

std::int64_t element_order(const DiscriminantForm& D, const DiscElement& x) {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    std::int64_t d = D.factors()[i];
    std::int64_t o = d / std::gcd(x.coeffs[i], d);
    ord = std::lcm(ord, o);
  }
  return ord;
}

std::vector<DiscElement> all_elements(const DiscriminantForm& D, std::int64_t cap) {
  if (D.size() > cap) throw TooLarge();
  std::vector<DiscElement> out;
  out.reserve(static_cast<std::size_t>(D.size().get_si()));
  DiscElement cur = D.zero();
  const auto& f = D.factors();
  for (;;) {
    out.push_back(cur);
    std::size_t i = f.size();
    while (i > 0) {
      --i;
      if (++cur.coeffs[i] < f[i]) break;
      cur.coeffs[i] = 0;
      if (i == 0) return out;
    }
    if (f.empty()) return out;
  }
}

std::vector<DiscElement> isotropic_elements(const DiscriminantForm& D, std::int64_t d) {
  if (d < 1) throw Error("order must be positive");
  // Elements of order dividing d: coeff i runs over multiples of d_i/gcd(d_i, d).
  const auto& f = D.factors();
  std::vector<std::int64_t> step(f.size()), count(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::int64_t g = std::gcd(f[i], d);
    step[i] = f[i] / g;
    count[i] = g;
  }
  std::vector<DiscElement> out;
  std::vector<std::int64_t> idx(f.size(), 0);
  for (;;) {
    DiscElement x = D.zero();
    for (std::size_t i = 0; i < f.size(); ++i) x.coeffs[i] = idx[i] * step[i];
    if (element_order(D, x) == d && q_value(D, x) == 0) out.push_back(x);
    std::size_t i = f.size();
    bool done = f.empty();
    while (i > 0) {
      --i;
      if (++idx[i] < count[i]) break;
      idx[i] = 0;
      if (i == 0) done = true;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiscElement apply(const DiscriminantForm& D, const FiniteIsometry& f, const DiscElement& x) {
  std::vector<std::int64_t> raw(D.factors().size(), 0);
  for (std::size_t i = 0; i < f.images.size(); ++i) {
    std::int64_t c = x.coeffs[i];
    for (std::size_t j = 0; j < raw.size(); ++j)
      raw[j] = (raw[j] + (c % D.factors()[j]) * f.images[i].coeffs[j]) % D.factors()[j];
  }
  return D.reduce(raw);
}

FiniteIsometry compose(const DiscriminantForm& D, const FiniteIsometry& f,
                       const FiniteIsometry& g) {
  FiniteIsometry h;
  h.images.reserve(g.images.size());
  for (const auto& y : g.images) h.images.push_back(apply(D, f, y));
  return h;
}

FiniteIsometry identity_isometry(const DiscriminantForm& D) {
  FiniteIsometry f;
  for (std::size_t i = 0; i < D.num_generators(); ++i) {
    DiscElement e = D.zero();
    e.coeffs[i] = 1;
    f.images.push_back(e);
  }
  return f;
}

FiniteIsometry negation_isometry(const DiscriminantForm& D) {
  FiniteIsometry f = identity_isometry(D);
  for (auto& img : f.images) img = D.negate(img);
  return f;
}

namespace {

// Shared search core for isometry_group / is_isometric: enumerates maps
// src -> dst preserving generator orders, q and pairwise b, keeping only
// the bijective ones.
void isometry_search(const DiscriminantForm& src, const DiscriminantForm& dst,
                     std::int64_t cap, bool stop_at_first,
                     std::vector<FiniteIsometry>& found) {
  if (src.size() > cap || dst.size() > cap) throw TooLarge();
  if (src.factors() != dst.factors()) return;

  const std::size_t k = src.num_generators();
  std::vector<DiscElement> dst_elems = all_elements(dst, cap);
  // Candidate images per generator: same order, same q-value.
  std::vector<std::vector<DiscElement>> cand(k);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& y : dst_elems)
      if (element_order(dst, y) == src.factors()[i] && q_value(dst, y) == src.q_gens()[i])
        cand[i].push_back(y);

  std::vector<DiscElement> chosen(k, dst.zero());
  auto bijective = [&](const FiniteIsometry& f) {
    std::set<DiscElement> seen;
    std::vector<DiscElement> src_elems = all_elements(src, cap);
    for (const auto& x : src_elems)
      if (!seen.insert(apply(dst, f, x)).second) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) {
      FiniteIsometry f{chosen};
      if (bijective(f)) {
        found.push_back(f);
        if (stop_at_first) return true;
      }
      return false;
    }
    for (const auto& y : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        if (b_value(dst, chosen[j], y) != src.b_gens()[j][i]) ok = false;
      if (!ok) continue;
      chosen[i] = y;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
}

}  // namespace

std::vector<FiniteIsometry> isometry_group(const DiscriminantForm& D, std::int64_t cap) {
  std::vector<FiniteIsometry> g;
  isometry_search(D, D, cap, false, g);
  std::sort(g.begin(), g.end());
  return g;
}

std::optional<FiniteIsometry> is_isometric(const DiscriminantForm& D1,
                                           const DiscriminantForm& D2, std::int64_t cap) {
  std::vector<FiniteIsometry> g;
  isometry_search(D1, D2, cap, true, g);
  if (g.empty()) return std::nullopt;
  return g.front();
}

DiscriminantForm negate_form(const DiscriminantForm& D) {
  std::vector<Rat> q;
  std::vector<std::vector<Rat>> b;
  for (const auto& v : D.q_gens()) q.push_back(mod2(-v));
  for (const auto& row : D.b_gens()) {
    std::vector<Rat> r;
    for (const auto& v : row) r.push_back(mod1(-v));
    b.push_back(std::move(r));
  }
  return DiscriminantForm(D.factors(), std::move(q), std::move(b));
}

DiscriminantForm direct_sum(const DiscriminantForm& D1, const DiscriminantForm& D2) {
  const std::size_t k1 = D1.num_generators(), k2 = D2.num_generators();
  IntMatrix R(k1 + k2, k1 + k2);
  std::vector<Rat> q(k1 + k2, Rat(0));
  std::vector<std::vector<Rat>> b(k1 + k2, std::vector<Rat>(k1 + k2, Rat(0)));
  for (std::size_t i = 0; i < k1; ++i) {
    R(i, i) = static_cast<long>(D1.factors()[i]);
    q[i] = D1.q_gens()[i];
    for (std::size_t j = 0; j < k1; ++j) b[i][j] = D1.b_gens()[i][j];
  }
  for (std::size_t i = 0; i < k2; ++i) {
    R(k1 + i, k1 + i) = static_cast<long>(D2.factors()[i]);
    q[k1 + i] = D2.q_gens()[i];
    for (std::size_t j = 0; j < k2; ++j) b[k1 + i][k1 + j] = D2.b_gens()[i][j];
  }
  return reduce_presentation(R, q, b).form;
}

namespace {

void check_group(const DiscriminantForm& D, const std::vector<FiniteIsometry>& G) {
  std::set<FiniteIsometry> set(G.begin(), G.end());
  if (set.size() != G.size()) throw NotAGroup("duplicate elements");
  if (!set.count(identity_isometry(D))) throw NotAGroup("missing identity");
  for (const auto& f : G)
    for (const auto& g : G)
      if (!set.count(compose(D, f, g))) throw NotAGroup();
}

}  // namespace

std::vector<DiscElement> orbits(const DiscriminantForm& D,
                                const std::vector<FiniteIsometry>& G,
                                const std::vector<DiscElement>& S) {
  check_group(D, G);
  std::set<DiscElement> reps;
  for (const auto& x : S) {
    DiscElement best = x;
    for (const auto& f : G) best = std::min(best, apply(D, f, x));
    reps.insert(best);
  }
  return {reps.begin(), reps.end()};
}

std::int64_t double_coset_count(const DiscriminantForm& D,
                                const std::vector<FiniteIsometry>& G,
                                const std::vector<FiniteIsometry>& A,
                                const std::vector<FiniteIsometry>& B) {
  check_group(D, G);
  std::set<FiniteIsometry> gset(G.begin(), G.end());
  for (const auto* sub : {&A, &B}) {
    for (const auto& f : *sub)
      if (!gset.count(f)) throw NotSubgroup();
    try {
      check_group(D, *sub);
    } catch (const NotAGroup&) {
      throw NotSubgroup();
    }
  }
  std::set<FiniteIsometry> visited;
  std::int64_t count = 0;
  for (const auto& g : G) {
    if (visited.count(g)) continue;
    ++count;
    for (const auto& a : A)
      for (const auto& b : B) visited.insert(compose(D, compose(D, a, g), b));
  }
  return count;
}

ReducedPresentation reduce_presentation(const IntMatrix& R, const std::vector<Rat>& q_old,
                                        const std::vector<std::vector<Rat>>& b_old) {
  const std::size_t m = R.rows();
  SmithResult snf = smith_normal_form(R);
  // Column i of U^{-1} expresses new generator i in the old generators.
  IntMatrix uinv(m, m);
  {
    RatMatrix ui = rational_inverse(RatMatrix(snf.U));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (ui(i, j).get_den() != 1) throw Error("U inverse not integral");
        uinv(i, j) = ui(i, j).get_num();
      }
  }
  std::vector<std::int64_t> factors;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m; ++i) {
    if (i >= snf.S.cols() || snf.S(i, i) == 0) throw Error("presentation has infinite quotient");
    if (snf.S(i, i) == 1) continue;
    if (!snf.S(i, i).fits_slong_p()) throw TooLarge("invariant factor exceeds int64");
    factors.push_back(snf.S(i, i).get_si());
    keep.push_back(i);
  }

  auto q_of = [&](std::size_t col) {
    Rat acc(0);
    for (std::size_t a = 0; a < m; ++a) {
      const Int& ca = uinv(a, col);
      if (ca == 0) continue;
      acc += Rat(ca * ca) * q_old[a];
      for (std::size_t c = a + 1; c < m; ++c)
        acc += Rat(2 * ca * uinv(c, col)) * b_old[a][c];
    }
    acc.canonicalize();
    return mod2(acc);
  };
  auto b_of = [&](std::size_t ci, std::size_t cj) {
    Rat acc(0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < m; ++c) {
        if (uinv(a, ci) == 0 || uinv(c, cj) == 0) continue;
        acc += Rat(uinv(a, ci) * uinv(c, cj)) * b_old[a][c];
      }
    acc.canonicalize();
    return mod1(acc);
  };

  const std::size_t k = keep.size();
  std::vector<Rat> q(k);
  std::vector<std::vector<Rat>> b(k, std::vector<Rat>(k));
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = q_of(keep[i]);
    for (std::size_t j = 0; j < k; ++j) b[i][j] = b_of(keep[i], keep[j]);
  }
  IntMatrix expr(m, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < m; ++i) expr(i, j) = uinv(i, keep[j]);
  return {DiscriminantForm(std::move(factors), std::move(q), std::move(b)), expr};
}

}  // namespace k3fm
