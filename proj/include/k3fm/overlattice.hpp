#pragma once

// The even overlattice M_x = <x, L> generated by L and a lift of an
// isotropic discriminant element x, plus the induced finite form on
// x-perp / <x> computed purely at the finite-group level.

#include <cstdint>
#include <vector>

#include "k3fm/discform.hpp"
#include "k3fm/lattice.hpp"

namespace k3fm {

struct OverlatticeResult {
  EvenLattice M;
  IntMatrix embed;  // coordinates of L's basis vectors in M's basis (rank x rank)
  std::int64_t d = 1;                // order of x = index [M : L]
  DiscriminantForm induced_form;     // == discriminant_form(M).form
  std::int64_t alpha_image = 1;      // alpha_x(x) = 1 in Z/d
};

// Throws NotIsotropic when q(x) != 0 in Q/2Z.
OverlatticeResult overlattice(const EvenLattice& L, const DiscFormData& disc,
                              const DiscElement& x);

// The finite quadratic form on {y : b(x,y) = 0 in Q/Z} / <x>, with
// generator representatives in D for pushing isometries forward.
struct PerpModResult {
  DiscriminantForm form;
  std::vector<DiscElement> gen_reps;  // representative in D of each generator
};
PerpModResult perp_mod(const DiscriminantForm& D, const DiscElement& x);

}  // namespace k3fm
