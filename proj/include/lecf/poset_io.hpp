#pragma once

// Poset JSON documents and Graphviz export.
//
//   {"n": 4, "covers": [[0,1],[2,1],[2,3]], "labels": ["a","b","c","d"], "x": 0}
//
// "labels" and "x" are optional. Covers may be any generating set of
// relations; they are normalized to the Hasse diagram on load.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lecf/poset.hpp"

namespace lecf {

struct PosetDocument {
    Poset poset;
    std::optional<Element> x;
};

nlohmann::json to_json(const Poset& p, std::optional<Element> x = std::nullopt);
PosetDocument poset_from_json(const nlohmann::json& j);
// Accepts a poset document or a build report (its "poset" member).
PosetDocument parse_poset_document(std::string_view text);

// Hasse diagram drawn bottom-up, covers sorted, `x` double-circled.
std::string to_dot(const Poset& p, std::optional<Element> x = std::nullopt);

} // namespace lecf
