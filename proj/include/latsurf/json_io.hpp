#pragma once

#include "latsurf/chern.hpp"
#include "latsurf/manifold.hpp"

#include <json.hpp>

namespace latsurf {

/// Integers that fit a JSON number stay numbers, anything larger becomes
/// a decimal string.
nlohmann::json json_int(const Int& v);
Int int_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LatticeVector& v);
LatticeVector vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResidueClass& r);
nlohmann::json to_json(const Signature& s);

/// {c, h, pairing, branch, verified: true}
nlohmann::json to_json(const CharCertificate& cert);

nlohmann::json to_json(const Decision& d);

}  // namespace latsurf
