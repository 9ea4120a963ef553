#pragma once

#include "latsurf/lattice.hpp"
#include "latsurf/manifold.hpp"

#include <string>

namespace latsurf {

/// Lattice spec: either a `+`-separated block list with tokens
/// k<1>, k<-1>, kH, kE8, k(-E8) (k an optional positive multiplier,
/// e.g. "2H+3<1>+<-1>"), or a JSON document {"gram": [[...], ...]}.
GramLattice parse_lattice_spec(const std::string& spec);

/// Comma-separated integers, e.g. "1,-2,0".
LatticeVector parse_vector(const std::string& text);

Int parse_int(const std::string& text);

/// Manifold spec: a built-in name ("S2xS2", "CP2", "CP2#kCP2bar" with a
/// literal k such as "CP2#3CP2bar"), a JSON document
/// {"b1": n, "lattice": <lattice spec>, "name"?, "chi"?}, or a bare
/// lattice spec (taken with b1 = 0). A supplied chi is cross-checked
/// against 2 - 2*b1 + b2.
FourManifold parse_manifold_spec(const std::string& spec);

std::string lattice_spec_string(const GramLattice& L);

}  // namespace latsurf
