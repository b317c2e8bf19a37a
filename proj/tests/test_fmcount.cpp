#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "k3fm/fmcount.hpp"
#include "k3fm/picard1.hpp"

using namespace k3fm;

TEST_CASE("epsilon weights") {
  CHECK(epsilon(1) == 1);
  CHECK(epsilon(2) == 1);
  CHECK(epsilon(3) == 2);
  CHECK(epsilon(5) == 2);
  CHECK_THROWS_AS(epsilon(0), Error);
}

TEST_CASE("hodge group realization") {
  DiscriminantForm D = discriminant_form(rank_one(12)).form;  // Z/12
  CHECK(realize_hodge_group(HodgeGroupSpec::trivial(), D, 1).size() == 1);
  auto pm = realize_hodge_group(HodgeGroupSpec::plus_minus(), D, 1);
  CHECK(pm.size() == 2);

  // Explicit {+-id} passes validation.
  HodgeGroupSpec ex;
  ex.variant = HodgeGroupSpec::Variant::Explicit;
  ex.elements = {identity_isometry(D), negation_isometry(D)};
  HodgeGroupCheck check;
  CHECK(realize_hodge_group(ex, D, 1, &check).size() == 2);
  CHECK(check.warnings.empty());

  // Not closed: {-id} alone lacks the identity.
  HodgeGroupSpec bad;
  bad.variant = HodgeGroupSpec::Variant::Explicit;
  bad.elements = {negation_isometry(D)};
  CHECK_THROWS_AS(realize_hodge_group(bad, D, 1), NotAGroup);

  // Not q-preserving: generator -> 2 * generator on Z/12 changes order and q.
  HodgeGroupSpec notq;
  notq.variant = HodgeGroupSpec::Variant::Explicit;
  notq.elements = {identity_isometry(D), FiniteIsometry{{DiscElement{{2}}}}};
  CHECK_THROWS_AS(realize_hodge_group(notq, D, 1), Error);
}

TEST_CASE("hodge stabilizer of a distinguished element") {
  DiscriminantForm d8 = discriminant_form(rank_one(8)).form;
  auto pm8 = realize_hodge_group(HodgeGroupSpec::plus_minus(), d8, 1);
  CHECK(hodge_stabilizer(d8, pm8, DiscElement{{4}}).size() == 2);  // -x = x

  DiscriminantForm d18 = discriminant_form(rank_one(36)).form;
  auto pm18 = realize_hodge_group(HodgeGroupSpec::plus_minus(), d18, 1);
  CHECK(hodge_stabilizer(d18, pm18, DiscElement{{6}}).size() == 1);  // order 3

  auto triv = realize_hodge_group(HodgeGroupSpec::trivial(), d18, 1);
  CHECK(hodge_stabilizer(d18, triv, DiscElement{{6}}).size() == 1);
}

TEST_CASE("double-coset tau values") {
  // im_OM = O_DM (surjective case): always 1.
  DiscriminantForm d24 = discriminant_form(rank_one(24)).form;
  auto G = isometry_group(d24);
  std::vector<FiniteIsometry> triv = {identity_isometry(d24)};
  CHECK(tau_count(d24, G, G, G) == 1);
  CHECK(tau_count(d24, G, triv, G) == 1);
  // stab = im = {id}, |O_DM| = 4: tau = 4
  REQUIRE(G.size() == 4);
  CHECK(tau_count(d24, G, triv, triv) == 4);
  // M = <12>: O_DM has order 2^tau(6) = 4, im of O(M)={+-id} has order 2
  DiscriminantForm d12 = discriminant_form(rank_one(12)).form;
  auto G12 = isometry_group(d12);
  REQUIRE(G12.size() == 4);
  std::vector<FiniteIsometry> pmimg = {identity_isometry(d12), negation_isometry(d12)};
  std::vector<FiniteIsometry> triv12 = {identity_isometry(d12)};
  CHECK(tau_count(d12, G12, triv12, pmimg) == 2);
}

TEST_CASE("orientation classification") {
  CHECK(classify_orientation(rank_one(2)) == Orientation::G1);
  CHECK(classify_orientation(rank_one(12)) == Orientation::G2);
  CHECK(classify_orientation(direct_sum(named("U"), rank_one(-4))) == Orientation::G1);
  CHECK(classify_orientation(rescale(named("U"), 2)) == Orientation::Unknown);
  CHECK_THROWS_AS(classify_orientation(rank_one(-2)), BadSignature);
  CHECK_THROWS_AS(classify_orientation(named("E8")), BadSignature);
}

TEST_CASE("rank-1 counting engine agrees with the closed formula") {
  for (std::int64_t n = 1; n <= 30; ++n)
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % (d * d) != 0) continue;
      FmCountReport r = count_fm(rank_one(2 * n), d, HodgeGroupSpec::plus_minus());
      CHECK(r.mode == CountMode::PicardOne);
      CHECK(r.total == closed_count(n, d));
    }
  // d^2 does not divide n: zero, with no orbits
  FmCountReport r = count_fm(rank_one(2 * 5), 2, HodgeGroupSpec::plus_minus());
  CHECK(r.total == 0);
  CHECK(r.orbit_entries.empty());
}

TEST_CASE("pinned rank-1 reports") {
  {
    FmCountReport r = count_fm(rank_one(12), 1, HodgeGroupSpec::plus_minus());
    CHECK(r.total == 2);  // 2^(tau(6)-1)
    REQUIRE(r.orbit_entries.size() == 1);
    CHECK(r.orbit_entries[0].tau == 2);
    CHECK(r.orbit_entries[0].g_class == GClass::G2);
  }
  {
    FmCountReport r = count_fm(rank_one(18), 3, HodgeGroupSpec::plus_minus());
    CHECK(r.total == 1);  // n = 9 d = 3: M = <2>, G1
    REQUIRE(r.orbit_entries.size() == 1);
    CHECK(r.orbit_entries[0].m_gram == IntMatrix{{2}});
    CHECK(r.orbit_entries[0].g_class == GClass::G1);
  }
  {
    FmCountReport r = count_fm(rank_one(72), 3, HodgeGroupSpec::plus_minus());
    CHECK(r.total == 2);  // n = 36 d = 3: M = <8>, G2, tau = 1, epsilon = 2
    REQUIRE(r.orbit_entries.size() == 1);
    CHECK(r.orbit_entries[0].m_gram == IntMatrix{{8}});
    CHECK(r.orbit_entries[0].g_class == GClass::G2);
    CHECK(r.orbit_entries[0].tau == 1);
  }
}

TEST_CASE("Jacobian fast path (U summand)") {
  EvenLattice ns = direct_sum(named("U"), rank_one(-8));
  FmCountReport r = count_fm(ns, 2, HodgeGroupSpec::plus_minus());
  CHECK(r.mode == CountMode::Jacobian);
  CHECK(r.total == 1);
  REQUIRE(r.orbit_entries.size() == 1);
  CHECK(r.orbit_entries[0].g_class == GClass::G1);
  CHECK(r.orbit_entries[0].tau == 1);

  // Cross-check against a from-scratch orbit count of {+-1} on I^d.
  for (std::int64_t m : {6, 8, 9, 12}) {
    EvenLattice l = direct_sum(named("U"), rank_one(-2 * m));
    DiscriminantForm D = discriminant_form(l).form;
    for (std::int64_t d = 1; d <= 4; ++d) {
      std::set<DiscElement> seen;
      std::int64_t orbit_count = 0;
      for (const auto& x : isotropic_elements(D, d))
        if (seen.insert(x).second) {
          seen.insert(D.negate(x));
          ++orbit_count;
        }
      CHECK(count_fm(l, d, HodgeGroupSpec::plus_minus()).total == orbit_count);
    }
  }
}

TEST_CASE("two-elementary fast path") {
  EvenLattice u2 = rescale(named("U"), 2);
  {
    FmCountReport r = count_fm(u2, 2, HodgeGroupSpec::plus_minus());
    CHECK(r.mode == CountMode::TwoElementary);
    CHECK(r.total == 2);  // I^2 = {e/2, f/2}; -id trivial on 2-torsion
  }
  for (std::int64_t d : {3, 4, 5}) {
    FmCountReport r = count_fm(u2, d, HodgeGroupSpec::plus_minus());
    CHECK(r.mode == CountMode::TwoElementary);
    CHECK(r.total == 0);
  }
}

TEST_CASE("general d <= 2 path under the singleton criterion") {
  // <2> + <-4> + <-4>: rank 3 >= l(D) + 2 fails (l = 3)? build a case that
  // works: U(2) + <-2> has l(D) = 3, rank 3 -> fails; use gram of U + <-8>
  // passed as a raw matrix so the U summand is not structural.
  EvenLattice raw = make_lattice(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, -8}});
  FmCountReport r = count_fm(raw, 2, HodgeGroupSpec::plus_minus());
  CHECK(r.mode == CountMode::GeneralSmallD);
  CHECK(r.total == 1);  // same count as the structural Jacobian path
}

TEST_CASE("unsupported cases are explained, never silently wrong") {
  // d >= 3 with a non-2-elementary raw lattice without U summand
  EvenLattice raw = make_lattice(IntMatrix{{0, 3, 0}, {3, 0, 0}, {0, 0, -18}});
  FmCountReport r = count_fm(raw, 3, HodgeGroupSpec::plus_minus());
  CHECK(r.mode == CountMode::Unsupported);
  CHECK(!r.reason.empty());
  CHECK(r.total == 0);
}

TEST_CASE("signature is validated") {
  CHECK_THROWS_AS(count_fm(named("E8"), 1, HodgeGroupSpec::plus_minus()),
                  BadSignature);
  CHECK_THROWS_AS(count_fm(rank_one(-2), 1, HodgeGroupSpec::plus_minus()),
                  BadSignature);
}

TEST_CASE("report totals are recomputable from the per-orbit entries") {
  for (std::int64_t n : {6, 12, 16, 36, 48}) {
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % (d * d) != 0) continue;
      FmCountReport r = count_fm(rank_one(2 * n), d, HodgeGroupSpec::plus_minus());
      std::int64_t total = 0;
      for (const auto& e : r.orbit_entries)
        total += (e.g_class == GClass::G1 ? 1 : epsilon(d)) * e.tau;
      CHECK(total == r.total);
      for (const auto& e : r.orbit_entries) CHECK(e.order == d);
    }
  }
}

TEST_CASE("untwisted convenience alias") {
  CHECK(count_fm_d1(rank_one(2), HodgeGroupSpec::plus_minus()) == 1);
  CHECK(count_fm_d1(rank_one(12), HodgeGroupSpec::plus_minus()) == 2);
  CHECK(count_fm_d1(rank_one(60), HodgeGroupSpec::plus_minus()) == 4);
}

TEST_CASE("explicit Hodge groups of order >= 3 are flagged experimental") {
  // On D = Z/5 of <10>? q(x) = x^2/10: automorphisms u with u^2 = 1 mod
  // 5-ish... use Z/12 where O(D) has order 4 and take the full group.
  DiscriminantForm D = discriminant_form(rank_one(12)).form;
  HodgeGroupSpec ex;
  ex.variant = HodgeGroupSpec::Variant::Explicit;
  ex.elements = isometry_group(D);
  FmCountReport r = count_fm(rank_one(12), 1, ex);
  CHECK(r.experimental);
  CHECK(!r.warnings.empty());  // order 4 is cyclic? {1,5,7,11}^2=1: Klein four
}
