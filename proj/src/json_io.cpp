#include "latsurf/json_io.hpp"

#include <limits>

namespace latsurf {

nlohmann::json json_int(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
    return v.str();
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or decimal string in JSON");
}

nlohmann::json to_json(const LatticeVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Int& c : v.coords) arr.push_back(json_int(c));
    return arr;
}

LatticeVector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a JSON array of integers");
    std::vector<Int> coords;
    coords.reserve(j.size());
    for (const auto& cell : j) coords.push_back(int_from_json(cell));
    return LatticeVector(std::move(coords));
}

nlohmann::json to_json(const ResidueClass& r) {
    return {{"value", json_int(r.value)}, {"modulus", json_int(r.modulus)}};
}

nlohmann::json to_json(const Signature& s) {
    return {{"b_plus", s.b_plus}, {"b_minus", s.b_minus}, {"tau", s.tau()}};
}

nlohmann::json to_json(const CharCertificate& cert) {
    return {{"c", to_json(cert.c())},
            {"h", json_int(cert.square())},
            {"pairing", json_int(cert.pairing_with_gamma())},
            {"branch", cert.branch()},
            {"verified", true}};
}

nlohmann::json to_json(const Decision& d) {
    nlohmann::json j{{"verdict", verdict_name(d.verdict)}, {"rule", rule_name(d.rule)}};
    if (d.certificate) j["certificate"] = to_json(*d.certificate);
    if (d.verdict == Verdict::Unknown) j["bound_used"] = d.bound_used;
    if (!d.note.empty()) j["note"] = d.note;
    return j;
}

}  // namespace latsurf
