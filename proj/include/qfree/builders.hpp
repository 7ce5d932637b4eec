#pragma once

#include <string>
#include <vector>

#include "qfree/gauge.hpp"
#include "qfree/selfdual.hpp"

// Named example isometries.  All of them are exact semigroup members by
// construction (real, isometric for the relevant form).
namespace qfree {

BlockOperator identity_isometry(Index modes);

/// e_i -> e_{i+1} within each species; `modes` domain modes per species,
/// modes + 1 codomain modes per species.  Codomain mode s*(modes+1) is the
/// first mode of species s and spans the cokernel together with its conjugate.
BlockOperator shift_isometry(Index modes, Index species = 1);

/// V e_i = e_i*, V e_i* = e_i for i in `flipped`, identity elsewhere.
BlockOperator flip_isometry(Index modes, const std::vector<Index>& flipped);

/// Two modes: e_0 <-> e_1*, e_1 <-> e_0*.
BlockOperator pair_flip_isometry();

/// Two-mode Bogoliubov rotation: V e_1 = cos t e_1 + sin t e_2*,
/// V e_2 = cos t e_2 - sin t e_1*.
BlockOperator bogoliubov_isometry(double theta);

/// Single-mode symplectic squeeze: V e_1 = cosh r e_1 + sinh r e_1*.
BlockOperator squeeze_isometry(double r);

/// Shift 1 -> 2 modes followed by a squeeze of codomain mode 1.
BlockOperator squeezed_shift_isometry(double r);

/// Unitary on 2w modes split into charge +1 modes (0..w-1 domain, 0..w
/// codomain) and charge -1 modes.  Shifts the positive ladder up by one and
/// feeds the lowest negative antiparticle into the bottom of it, so the
/// charge-(+) block of V11 has Fredholm index 1.
BlockOperator charged_shift_isometry(Index w);
std::vector<int> charged_shift_charges(Index w, bool codomain);

/// Permutation of K1 modes (and, through J, of K2).
BlockOperator mode_permutation(const std::vector<Index>& perm);

struct NamedModel {
  std::string name;               // canonical "name(args)"
  BlockOperator v;
  GaugeAction gauge;
  bool dirac = false;             // structured family; v is not materialised
  Index dirac_w = 0;
  Index dirac_m = 0;
};

/// Parses "shift", "shift(3)", "shift(3,2)", "flip(3)", "double-flip",
/// "pair-flip", "bogoliubov(t)", "squeeze(r)", "squeezed-shift(r)",
/// "charged-shift(w)", "identity(n)", "dirac-v(W,M)".  MalformedInput on
/// unknown names or bad arguments.
NamedModel build_named(const std::string& spec);
NamedModel build_named(const std::string& name, const std::vector<double>& args);

}  // namespace qfree
