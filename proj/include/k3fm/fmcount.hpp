#pragma once

// The twisted Fourier-Mukai counting formula, in the modes where every
// ingredient (genus, image of O(M), orientation class) is computable:
// Picard rank 1, Jacobian (U summand), 2-elementary NS, and the d <= 2
// general case under the Nikulin singleton criterion.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "k3fm/discform.hpp"
#include "k3fm/lattice.hpp"
#include "k3fm/overlattice.hpp"

namespace k3fm {

struct HodgeGroupSpec {
  enum class Variant { Trivial, PlusMinus, Explicit };
  Variant variant = Variant::PlusMinus;
  // For Explicit: a group of isometries of (D_NS, q), given on D_NS.
  std::vector<FiniteIsometry> elements;

  static HodgeGroupSpec trivial() { return {Variant::Trivial, {}}; }
  static HodgeGroupSpec plus_minus() { return {Variant::PlusMinus, {}}; }
};

// Warnings collected during validation (genericity checks); never fatal.
struct HodgeGroupCheck {
  std::vector<std::string> warnings;
};

// Realize the spec on a concrete discriminant form; validates Explicit
// groups (closure, q-preservation, cyclicity, phi(order) | 22 - rank).
std::vector<FiniteIsometry> realize_hodge_group(const HodgeGroupSpec& spec,
                                                const DiscriminantForm& D, std::size_t ns_rank,
                                                HodgeGroupCheck* check = nullptr);

enum class CountMode { PicardOne, Jacobian, TwoElementary, GeneralSmallD, Unsupported };
enum class GClass { G1, G2, Irrelevant };

struct OrbitEntry {
  DiscElement x;
  std::int64_t order = 1;
  IntMatrix m_gram;
  std::int64_t tau = 1;
  GClass g_class = GClass::Irrelevant;
};

struct FmCountReport {
  std::int64_t d = 1;
  CountMode mode = CountMode::Unsupported;
  std::vector<OrbitEntry> orbit_entries;
  std::int64_t total = 0;
  std::string reason;  // set for Unsupported
  bool experimental = false;  // Explicit Hodge group of order >= 3
  std::vector<std::string> warnings;

  nlohmann::ordered_json to_json() const;
};

std::int64_t epsilon(std::int64_t d);

// Elements of G fixing x exactly.
std::vector<FiniteIsometry> hodge_stabilizer(const DiscriminantForm& D,
                                             const std::vector<FiniteIsometry>& G,
                                             const DiscElement& x);

// #(stab \ O_DM / im_OM); thin wrapper kept as a named operation.
std::int64_t tau_count(const DiscriminantForm& DM, const std::vector<FiniteIsometry>& O_DM,
                       const std::vector<FiniteIsometry>& stab,
                       const std::vector<FiniteIsometry>& im_OM);

// Orientation class of a lattice of signature (1, rank-1): G1 when an
// orientation-reversing isometry acting trivially on D_M is exhibited
// (U summand, or rank one with m = 1), G2 for other rank-one lattices,
// Unknown otherwise.
enum class Orientation { G1, G2, Unknown };
Orientation classify_orientation(const EvenLattice& M);

FmCountReport count_fm(const EvenLattice& NS, std::int64_t d, const HodgeGroupSpec& hodge,
                       std::int64_t cap = kDefaultGroupSizeCap);

std::int64_t count_fm_d1(const EvenLattice& NS, const HodgeGroupSpec& hodge,
                         std::int64_t cap = kDefaultGroupSizeCap);

}  // namespace k3fm
