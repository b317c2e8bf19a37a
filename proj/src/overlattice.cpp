#include "k3fm/overlattice.hpp"

#include <numeric>

namespace k3fm {

OverlatticeResult overlattice(const EvenLattice& L, const DiscFormData& disc,
                              const DiscElement& x) {
  const DiscriminantForm& D = disc.form;
  if (q_value(D, x) != 0) throw NotIsotropic();
  const std::size_t n = L.rank();
  const std::int64_t d = element_order(D, x);

  // Lift of x into L (x) Q, in L-basis coordinates.
  std::vector<Rat> lift(n, Rat(0));
  for (std::size_t j = 0; j < D.num_generators(); ++j) {
    if (x.coeffs[j] == 0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      lift[i] += Rat(static_cast<long>(x.coeffs[j])) * disc.gens(i, j);
      lift[i].canonicalize();
    }
  }

  Int den(1);
  for (const auto& v : lift) den = lcm(den, Int(v.get_den()));

  // Generators of den * M as rows: den * (basis of L) and den * lift.
  IntMatrix gen(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) gen(i, i) = den;
  for (std::size_t j = 0; j < n; ++j) {
    Rat v = lift[j] * Rat(den);
    v.canonicalize();
    gen(n, j) = v.get_num();
  }
  HermiteResult h = hermite_normal_form(gen);

  // Basis of M = (top n rows of H) / den.
  RatMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      basis(i, j) = Rat(h.H(i, j), den);
      basis(i, j).canonicalize();
    }

  RatMatrix bt(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bt(i, j) = basis(j, i);
  RatMatrix gm = basis * RatMatrix(L.gram()) * bt;
  IntMatrix gram_m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (gm(i, j).get_den() != 1) throw NotIsotropic("overlattice is not integral");
      gram_m(i, j) = gm(i, j).get_num();
    }

  OverlatticeResult r;
  r.M = make_lattice(gram_m);
  r.d = d;
  r.alpha_image = 1;

  // L's basis in M's basis: the inverse of the basis matrix, necessarily
  // integral since L is a sublattice of M.
  RatMatrix emb = rational_inverse(basis);
  r.embed = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (emb(i, j).get_den() != 1) throw Error("embedding matrix not integral");
      r.embed(i, j) = emb(i, j).get_num();
    }

  r.induced_form = discriminant_form(r.M).form;
  return r;
}

PerpModResult perp_mod(const DiscriminantForm& D, const DiscElement& x) {
  if (q_value(D, x) != 0) throw NotIsotropic();
  const std::size_t k = D.num_generators();
  if (k == 0) return {DiscriminantForm(), {}};

  // beta_i = b(x, g_i); x-perp lifted to Z^k is the solution lattice of
  // sum_i v_i * (N * beta_i) = 0 mod N.
  Int N(1);
  std::vector<Rat> beta(k);
  for (std::size_t i = 0; i < k; ++i) {
    DiscElement gi = D.zero();
    gi.coeffs[i] = 1;
    beta[i] = b_value(D, x, gi);
    N = lcm(N, Int(beta[i].get_den()));
  }
  IntMatrix A(1, k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    Rat c = beta[i] * Rat(N);
    c.canonicalize();
    A(0, i) = c.get_num();
  }
  A(0, k) = N;
  SmithResult snf = smith_normal_form(A);
  // Kernel basis of A = columns of V past the rank; its projection to the
  // first k coordinates is the x-perp sublattice (injective since N != 0).
  if (snf.S(0, 0) == 0) throw Error("unexpected zero row in perp_mod");
  IntMatrix kbasis(k, k);  // columns = V columns 1..k
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) kbasis(i, j) = snf.V(i, j + 1);

  // Relations: x itself and d_i * e_i, all expressed in kbasis coordinates.
  RatMatrix kinv = rational_inverse(RatMatrix(kbasis));
  auto in_kbasis = [&](const std::vector<Int>& target) {
    std::vector<Int> out(k);
    for (std::size_t i = 0; i < k; ++i) {
      Rat acc(0);
      for (std::size_t j = 0; j < k; ++j) acc += kinv(i, j) * Rat(target[j]);
      acc.canonicalize();
      if (acc.get_den() != 1) throw Error("relation not in x-perp sublattice");
      out[i] = acc.get_num();
    }
    return out;
  };
  IntMatrix R(k, k + 1);
  {
    std::vector<Int> xv(k);
    for (std::size_t i = 0; i < k; ++i) xv[i] = static_cast<long>(x.coeffs[i]);
    auto col = in_kbasis(xv);
    for (std::size_t i = 0; i < k; ++i) R(i, 0) = col[i];
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Int> t(k, Int(0));
      t[j] = static_cast<long>(D.factors()[j]);
      auto c = in_kbasis(t);
      for (std::size_t i = 0; i < k; ++i) R(i, j + 1) = c[i];
    }
  }

  // q and b of the kbasis generators, read off their images in D.
  std::vector<DiscElement> kelems(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::int64_t> raw(k);
    for (std::size_t i = 0; i < k; ++i) {
      Int c = kbasis(i, j) % static_cast<long>(D.factors()[i]);
      raw[i] = c.get_si();
    }
    kelems[j] = D.reduce(raw);
  }
  std::vector<Rat> q_old(k);
  std::vector<std::vector<Rat>> b_old(k, std::vector<Rat>(k));
  for (std::size_t i = 0; i < k; ++i) {
    q_old[i] = q_value(D, kelems[i]);
    for (std::size_t j = 0; j < k; ++j) b_old[i][j] = b_value(D, kelems[i], kelems[j]);
  }
  ReducedPresentation red = reduce_presentation(R, q_old, b_old);

  PerpModResult out;
  out.form = red.form;
  for (std::size_t j = 0; j < red.form.num_generators(); ++j) {
    std::vector<std::int64_t> raw(k, 0);
    // representative = sum_a expr(a, j) * kelems[a], folded in D
    for (std::size_t a = 0; a < k; ++a) {
      const Int& e = red.expr(a, j);
      if (e == 0) continue;
      for (std::size_t i = 0; i < k; ++i) {
        Int c = e % static_cast<long>(D.factors()[i]);
        raw[i] += c.get_si() * kelems[a].coeffs[i];
      }
    }
    out.gen_reps.push_back(D.reduce(raw));
  }
  return out;
}

}  // namespace k3fm
