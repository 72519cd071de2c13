#include "lecf/poset_io.hpp"

#include <sstream>

#include "lecf/errors.hpp"

namespace lecf {

nlohmann::json to_json(const Poset& p, std::optional<Element> x) {
    nlohmann::json j;
    j["n"] = p.size();
    auto covers = nlohmann::json::array();
    for (const auto& [u, v] : p.covers()) {
        covers.push_back({u, v});
    }
    j["covers"] = std::move(covers);
    if (!p.labels().empty()) {
        j["labels"] = p.labels();
    }
    if (x) {
        j["x"] = *x;
    }
    return j;
}

PosetDocument poset_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) {
            throw DomainError("poset JSON must be an object");
        }
        if (!j.contains("n") || !j["n"].is_number_unsigned()) {
            throw DomainError("poset JSON needs a non-negative integer field \"n\"");
        }
        const auto n = j["n"].get<std::size_t>();
        std::vector<Relation> rel;
        if (j.contains("covers")) {
            for (const auto& pair : j["covers"]) {
                if (!pair.is_array() || pair.size() != 2) {
                    throw DomainError("each cover must be a pair [u, v]");
                }
                rel.emplace_back(pair[0].get<Element>(), pair[1].get<Element>());
            }
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels = j["labels"].get<std::vector<std::string>>();
        }
        PosetDocument doc{Poset::from_relations(n, rel, std::move(labels)), std::nullopt};
        if (j.contains("x") && !j["x"].is_null()) {
            auto x = j["x"].get<Element>();
            if (x >= n) {
                throw DomainError("distinguished element " + std::to_string(x) + " is out of range");
            }
            doc.x = x;
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed poset JSON: ") + e.what());
    }
}

PosetDocument parse_poset_document(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    // A build report carries its poset under "poset".
    if (j.is_object() && !j.contains("n") && j.contains("poset") && j["poset"].is_object()) {
        return poset_from_json(j["poset"]);
    }
    return poset_from_json(j);
}

std::string to_dot(const Poset& p, std::optional<Element> x) {
    std::ostringstream os;
    os << "digraph poset {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=circle];\n";
    for (Element v = 0; v < p.size(); ++v) {
        os << "  " << v << " [label=\"" << (p.labels().empty() ? std::to_string(v) : p.labels()[v]) << "\"";
        if (x && *x == v) {
            os << ", shape=doublecircle";
        }
        os << "];\n";
    }
    for (const auto& [u, v] : p.covers()) {
        os << "  " << u << " -> " << v << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace lecf
