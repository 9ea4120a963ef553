#include "latsurf/parse.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace latsurf {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

GramLattice lattice_from_json(const nlohmann::json& j) {
    if (!j.contains("gram") || !j["gram"].is_array())
        throw std::invalid_argument("lattice spec: JSON form needs a \"gram\" array");
    const auto& rows = j["gram"];
    const int n = static_cast<int>(rows.size());
    Mat gram(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("lattice spec: gram matrix must be square");
        for (int j2 = 0; j2 < n; ++j2) {
            const auto& cell = rows[i][j2];
            if (cell.is_number_integer())
                gram.at(i, j2) = Int(cell.get<long long>());
            else if (cell.is_string())
                gram.at(i, j2) = parse_int(cell.get<std::string>());
            else
                throw std::invalid_argument("lattice spec: gram entries must be integers");
        }
    }
    return GramLattice::from_gram(std::move(gram));
}

GramLattice lattice_from_grammar(const std::string& spec) {
    std::vector<Block> blocks;
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, '+')) {
        token = trim(token);
        if (token.empty())
            throw std::invalid_argument("lattice spec: empty block token");
        size_t pos = 0;
        long mult = 1;
        if (std::isdigit(static_cast<unsigned char>(token[0]))) {
            size_t end = 0;
            mult = std::stol(token, &end);
            pos = end;
            if (mult < 1)
                throw std::invalid_argument("lattice spec: multiplier must be positive");
        }
        std::string name = trim(token.substr(pos));
        Block b;
        if (name == "H") b = Block::H;
        else if (name == "<1>") b = Block::Plus1;
        else if (name == "<-1>") b = Block::Minus1;
        else if (name == "E8") b = Block::E8;
        else if (name == "(-E8)" || name == "-E8") b = Block::MinusE8;
        else
            throw std::invalid_argument("lattice spec: unknown block \"" + name +
                                        "\" (expected <1>, <-1>, H, E8, (-E8))");
        for (long i = 0; i < mult; ++i) blocks.push_back(b);
    }
    if (blocks.empty()) throw std::invalid_argument("lattice spec: no blocks");
    return GramLattice::from_blocks(blocks);
}

}  // namespace

GramLattice parse_lattice_spec(const std::string& spec_in) {
    std::string spec = trim(spec_in);
    if (spec.empty()) throw std::invalid_argument("lattice spec: empty");
    if (spec[0] == '{') {
        nlohmann::json j = nlohmann::json::parse(spec, nullptr, false);
        if (j.is_discarded())
            throw std::invalid_argument("lattice spec: malformed JSON");
        return lattice_from_json(j);
    }
    return lattice_from_grammar(spec);
}

Int parse_int(const std::string& text_in) {
    std::string text = trim(text_in);
    if (text.empty()) throw std::invalid_argument("expected an integer, got \"\"");
    size_t i = text[0] == '-' || text[0] == '+' ? 1 : 0;
    if (i == text.size()) throw std::invalid_argument("expected an integer");
    for (size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw std::invalid_argument("expected an integer, got \"" + text + "\"");
    return Int(text);
}

LatticeVector parse_vector(const std::string& text) {
    std::vector<Int> coords;
    std::stringstream ss(trim(text));
    std::string part;
    while (std::getline(ss, part, ',')) coords.push_back(parse_int(part));
    if (coords.empty()) throw std::invalid_argument("vector: expected comma-separated integers");
    return LatticeVector(std::move(coords));
}

namespace {

FourManifold manifold_from_json(const nlohmann::json& j) {
    if (!j.contains("b1") || !j.contains("lattice"))
        throw std::invalid_argument("manifold spec: JSON form needs \"b1\" and \"lattice\"");
    Int b1;
    if (j["b1"].is_number_integer()) b1 = Int(j["b1"].get<long long>());
    else if (j["b1"].is_string()) b1 = parse_int(j["b1"].get<std::string>());
    else throw std::invalid_argument("manifold spec: b1 must be an integer");

    GramLattice lattice = j["lattice"].is_string()
                              ? parse_lattice_spec(j["lattice"].get<std::string>())
                              : lattice_from_json(j["lattice"]);
    std::string name = j.value("name", std::string{});
    FourManifold m(b1, std::move(lattice), name);
    if (j.contains("chi")) {
        Int chi(j["chi"].get<long long>());
        if (chi != m.euler_characteristic()) {
            std::ostringstream os;
            os << "manifold spec: chi = " << chi << " contradicts 2 - 2*b1 + b2 = "
               << m.euler_characteristic();
            throw std::invalid_argument(os.str());
        }
    }
    return m;
}

}  // namespace

FourManifold parse_manifold_spec(const std::string& spec_in) {
    std::string spec = trim(spec_in);
    if (spec.empty()) throw std::invalid_argument("manifold spec: empty");
    if (spec[0] == '{') {
        nlohmann::json j = nlohmann::json::parse(spec, nullptr, false);
        if (j.is_discarded())
            throw std::invalid_argument("manifold spec: malformed JSON");
        return manifold_from_json(j);
    }
    if (spec == "S2xS2")
        return FourManifold(0, GramLattice::from_blocks({Block::H}), "S2xS2");
    if (spec == "CP2")
        return FourManifold(0, GramLattice::from_blocks({Block::Plus1}), "CP2");
    // CP2#kCP2bar, k a literal positive integer (absent k means 1)
    if (spec.rfind("CP2#", 0) == 0 && spec.size() >= 10 &&
        spec.compare(spec.size() - 6, 6, "CP2bar") == 0) {
        std::string mid = spec.substr(4, spec.size() - 10);
        long k = 1;
        if (!mid.empty()) {
            try {
                size_t end = 0;
                k = std::stol(mid, &end);
                if (end != mid.size() || k < 1) throw std::invalid_argument("");
            } catch (...) {
                throw std::invalid_argument("manifold spec: malformed CP2#kCP2bar name");
            }
        }
        std::vector<Block> blocks{Block::Plus1};
        for (long i = 0; i < k; ++i) blocks.push_back(Block::Minus1);
        return FourManifold(0, GramLattice::from_blocks(blocks), spec);
    }
    // bare lattice spec, read as b1 = 0
    try {
        GramLattice L = parse_lattice_spec(spec);
        return FourManifold(0, std::move(L), spec);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(
            "manifold spec: not a built-in name, JSON document, or lattice spec: \"" +
            spec + "\"");
    }
}

std::string lattice_spec_string(const GramLattice& L) {
    std::ostringstream os;
    if (L.block_spec()) {
        const auto& blocks = *L.block_spec();
        for (size_t i = 0; i < blocks.size(); ++i) {
            if (i) os << "+";
            os << block_name(blocks[i]);
        }
        return os.str();
    }
    os << "{\"gram\": [";
    for (int i = 0; i < L.rank(); ++i) {
        if (i) os << ", ";
        os << "[";
        for (int j = 0; j < L.rank(); ++j) {
            if (j) os << ", ";
            os << L.gram().at(i, j);
        }
        os << "]";
    }
    os << "]}";
    return os.str();
}

}  // namespace latsurf
