#include "k3fm/fmcount.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "k3fm/picard1.hpp"

namespace k3fm {

std::int64_t epsilon(std::int64_t d) {
  if (d < 1) throw Error("d must be positive");
  return d <= 2 ? 1 : 2;
}

std::vector<FiniteIsometry> realize_hodge_group(const HodgeGroupSpec& spec,
                                                const DiscriminantForm& D, std::size_t ns_rank,
                                                HodgeGroupCheck* check) {
  std::vector<FiniteIsometry> g;
  switch (spec.variant) {
    case HodgeGroupSpec::Variant::Trivial:
      g = {identity_isometry(D)};
      break;
    case HodgeGroupSpec::Variant::PlusMinus: {
      g = {identity_isometry(D)};
      FiniteIsometry neg = negation_isometry(D);
      if (neg != g[0]) g.push_back(neg);
      break;
    }
    case HodgeGroupSpec::Variant::Explicit: {
      g = spec.elements;
      if (g.empty()) throw NotAGroup("empty Hodge group");
      // Each element must be a q-preserving automorphism.
      for (const auto& f : g) {
        if (f.images.size() != D.num_generators()) throw Error("Hodge isometry shape mismatch");
        for (std::size_t i = 0; i < f.images.size(); ++i) {
          DiscElement gi = D.zero();
          gi.coeffs[i] = 1;
          if (q_value(D, f.images[i]) != D.q_gens()[i])
            throw Error("Hodge group element does not preserve q");
          for (std::size_t j = 0; j < i; ++j)
            if (b_value(D, f.images[i], f.images[j]) != D.b_gens()[i][j])
              throw Error("Hodge group element does not preserve b");
        }
        std::set<DiscElement> seen;
        for (const auto& x : all_elements(D))
          if (!seen.insert(apply(D, f, x)).second)
            throw Error("Hodge group element is not bijective");
      }
      std::set<FiniteIsometry> set(g.begin(), g.end());
      if (!set.count(identity_isometry(D))) throw NotAGroup("missing identity");
      for (const auto& f : g)
        for (const auto& h : g)
          if (!set.count(compose(D, f, h))) throw NotAGroup();
      if (check) {
        // Genericity checks: cyclic, and phi(|G|) | rk(T) = 22 - rk(NS).
        bool cyclic = false;
        for (const auto& f : g) {
          std::set<FiniteIsometry> gen{identity_isometry(D)};
          FiniteIsometry cur = f;
          while (gen.insert(cur).second) cur = compose(D, f, cur);
          if (gen.size() == g.size()) {
            cyclic = true;
            break;
          }
        }
        if (!cyclic) check->warnings.push_back("Hodge group is not cyclic");
        std::int64_t rk_t = 22 - static_cast<std::int64_t>(ns_rank);
        if (rk_t <= 0 || rk_t % euler_phi(static_cast<std::int64_t>(g.size())) != 0)
          check->warnings.push_back(
              "phi(|Hodge group|) does not divide 22 - rank(NS); non-generic input");
      }
      break;
    }
  }
  std::sort(g.begin(), g.end());
  return g;
}

std::vector<FiniteIsometry> hodge_stabilizer(const DiscriminantForm& D,
                                             const std::vector<FiniteIsometry>& G,
                                             const DiscElement& x) {
  std::vector<FiniteIsometry> out;
  for (const auto& f : G)
    if (apply(D, f, x) == x) out.push_back(f);
  return out;
}

std::int64_t tau_count(const DiscriminantForm& DM, const std::vector<FiniteIsometry>& O_DM,
                       const std::vector<FiniteIsometry>& stab,
                       const std::vector<FiniteIsometry>& im_OM) {
  return double_coset_count(DM, O_DM, stab, im_OM);
}

Orientation classify_orientation(const EvenLattice& M) {
  auto [p, n] = M.signature();
  if (p != 1 || static_cast<std::size_t>(n) != M.rank() - 1) throw BadSignature();
  if (contains_u_summand(M)) return Orientation::G1;
  if (M.rank() == 1) {
    // O(<2m>) = {+-id}; -id acts trivially on D = Z/2m only for m = 1,
    // and reverses orientation since b_+ = 1.
    return M.gram()(0, 0) == 2 ? Orientation::G1 : Orientation::G2;
  }
  return Orientation::Unknown;
}

namespace {

// Push an isometry of D fixing x forward to the quotient form x-perp/<x>.
FiniteIsometry push_to_quotient(const DiscriminantForm& D, const DiscElement& x,
                                const PerpModResult& pm, const FiniteIsometry& f) {
  const DiscriminantForm& Q = pm.form;
  const std::int64_t d = element_order(D, x);
  auto canonical = [&](DiscElement y) {
    DiscElement best = y;
    DiscElement cur = y;
    for (std::int64_t t = 1; t < d; ++t) {
      cur = D.add(cur, x);
      best = std::min(best, cur);
    }
    return best;
  };
  // Coset-representative lookup over all of Q.
  std::map<DiscElement, DiscElement> lookup;  // canonical rep in D -> element of Q
  for (const auto& a : all_elements(Q)) {
    std::vector<std::int64_t> raw(D.num_generators(), 0);
    for (std::size_t j = 0; j < Q.num_generators(); ++j)
      for (std::size_t i = 0; i < raw.size(); ++i)
        raw[i] += (a.coeffs[j] % D.factors()[i]) * pm.gen_reps[j].coeffs[i];
    lookup.emplace(canonical(D.reduce(raw)), a);
  }
  FiniteIsometry out;
  for (std::size_t j = 0; j < Q.num_generators(); ++j) {
    auto it = lookup.find(canonical(apply(D, f, pm.gen_reps[j])));
    if (it == lookup.end()) throw Error("isometry does not preserve x-perp");
    out.images.push_back(it->second);
  }
  return out;
}

std::vector<FiniteIsometry> dedup_sorted(std::vector<FiniteIsometry> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FmCountReport count_fm(const EvenLattice& NS, std::int64_t d, const HodgeGroupSpec& hodge,
                       std::int64_t cap) {
  if (d < 1) throw Error("d must be positive");
  auto [p, nneg] = NS.signature();
  if (p != 1 || static_cast<std::size_t>(nneg) != NS.rank() - 1) throw BadSignature();

  FmCountReport rep;
  rep.d = d;

  DiscFormData disc = discriminant_form(NS);
  HodgeGroupCheck check;
  std::vector<FiniteIsometry> G = realize_hodge_group(hodge, disc.form, NS.rank(), &check);
  rep.warnings = check.warnings;
  rep.experimental = hodge.variant == HodgeGroupSpec::Variant::Explicit && G.size() >= 3;

  std::vector<DiscElement> iso = isotropic_elements(disc.form, d);
  std::vector<DiscElement> reps = orbits(disc.form, G, iso);

  if (NS.rank() == 1) {
    rep.mode = CountMode::PicardOne;
    const std::int64_t n = NS.gram()(0, 0).get_si() / 2;
    for (const auto& x : reps) {
      OrbitEntry e;
      e.x = x;
      e.order = element_order(disc.form, x);
      OverlatticeResult ov = overlattice(NS, disc, x);
      e.m_gram = ov.M.gram();
      PerpModResult pm = perp_mod(disc.form, x);
      std::vector<FiniteIsometry> O_DM = isometry_group(pm.form, cap);
      std::vector<FiniteIsometry> im_OM =
          dedup_sorted({identity_isometry(pm.form), negation_isometry(pm.form)});
      std::vector<FiniteIsometry> stab;
      for (const auto& f : hodge_stabilizer(disc.form, G, x))
        stab.push_back(push_to_quotient(disc.form, x, pm, f));
      stab = dedup_sorted(std::move(stab));
      e.tau = tau_count(pm.form, O_DM, stab, im_OM);
      Orientation cls = classify_orientation(ov.M);
      e.g_class = cls == Orientation::G1 ? GClass::G1 : GClass::G2;
      rep.total += (e.g_class == GClass::G1 ? 1 : epsilon(d)) * e.tau;
      rep.orbit_entries.push_back(std::move(e));
    }
    if (hodge.variant == HodgeGroupSpec::Variant::PlusMinus &&
        rep.total != closed_count(n, d))
      throw Error("Picard-one engine disagrees with the closed formula");
    return rep;
  }

  auto fill_trivial_tau = [&](GClass cls) {
    for (const auto& x : reps) {
      OrbitEntry e;
      e.x = x;
      e.order = element_order(disc.form, x);
      e.m_gram = overlattice(NS, disc, x).M.gram();
      e.tau = 1;
      e.g_class = cls;
      rep.orbit_entries.push_back(std::move(e));
    }
    rep.total = static_cast<std::int64_t>(reps.size());
  };

  if (contains_u_summand(NS)) {
    rep.mode = CountMode::Jacobian;
    fill_trivial_tau(GClass::G1);
    return rep;
  }
  if (is_two_elementary(NS)) {
    rep.mode = CountMode::TwoElementary;
    if (d <= 2) fill_trivial_tau(GClass::Irrelevant);
    // d >= 3: total stays 0 (I^d is empty in a 2-elementary group anyway)
    return rep;
  }
  if (d <= 2) {
    bool all_singleton = true;
    std::vector<OverlatticeResult> ovs;
    ovs.reserve(reps.size());
    for (const auto& x : reps) {
      ovs.push_back(overlattice(NS, disc, x));
      if (!nikulin_singleton(ovs.back().M)) all_singleton = false;
    }
    if (all_singleton) {
      rep.mode = CountMode::GeneralSmallD;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        OrbitEntry e;
        e.x = reps[i];
        e.order = element_order(disc.form, reps[i]);
        e.m_gram = ovs[i].M.gram();
        e.tau = 1;  // r_M surjective, so O(M) covers O(D_M)
        e.g_class = GClass::Irrelevant;  // epsilon(d) = 1 for d <= 2
        rep.orbit_entries.push_back(std::move(e));
      }
      rep.total = static_cast<std::int64_t>(reps.size());
      return rep;
    }
    rep.mode = CountMode::Unsupported;
    rep.reason =
        "genus enumeration: some overlattice M_x fails the Nikulin singleton "
        "criterion (indefinite, rank >= l(D)+2), and the genus of M_x is not "
        "computable here";
    return rep;
  }
  rep.mode = CountMode::Unsupported;
  rep.reason =
      "d >= 3 outside the supported classes: the G1/G2 orientation split and "
      "the image of O(M_x) in O(D_{M_x}) are not computable from the inputs";
  return rep;
}

std::int64_t count_fm_d1(const EvenLattice& NS, const HodgeGroupSpec& hodge, std::int64_t cap) {
  return count_fm(NS, 1, hodge, cap).total;
}

namespace {

const char* mode_name(CountMode m) {
  switch (m) {
    case CountMode::PicardOne: return "PicardOne";
    case CountMode::Jacobian: return "Jacobian";
    case CountMode::TwoElementary: return "TwoElementary";
    case CountMode::GeneralSmallD: return "GeneralSmallD";
    case CountMode::Unsupported: return "Unsupported";
  }
  return "?";
}

const char* gclass_name(GClass g) {
  switch (g) {
    case GClass::G1: return "G1";
    case GClass::G2: return "G2";
    case GClass::Irrelevant: return "Irrelevant";
  }
  return "?";
}

}  // namespace

nlohmann::ordered_json FmCountReport::to_json() const {
  nlohmann::ordered_json j;
  j["d"] = d;
  j["mode"] = mode_name(mode);
  nlohmann::ordered_json orbs = nlohmann::ordered_json::array();
  for (const auto& e : orbit_entries) {
    nlohmann::ordered_json o;
    o["x"] = e.x.coeffs;
    o["d_check"] = e.order;
    nlohmann::ordered_json gram = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < e.m_gram.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < e.m_gram.cols(); ++k)
        row.push_back(e.m_gram(i, k).get_si());
      gram.push_back(row);
    }
    o["M_gram"] = gram;
    o["tau"] = e.tau;
    o["g_class"] = gclass_name(e.g_class);
    orbs.push_back(o);
  }
  j["orbits"] = orbs;
  j["total"] = total;
  if (mode == CountMode::Unsupported) j["reason"] = reason;
  if (experimental) j["experimental"] = true;
  return j;
}

}  // namespace k3fm
