#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "holonomy/coloring.hpp"
#include "holonomy/diagram.hpp"

namespace hol {

std::uint64_t fnv1a(const std::string& s);
std::string hash_hex(const std::string& s);
std::string diagram_hash(const SlicedDiagram& d);
std::string coloring_hash(const GColoring& c);

json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

// Element from a JSON value or from text: JSON if it parses, otherwise an element name.
Element element_from_text(const FactorizableGroup& G, const std::string& text);

// Bottom-color file: {"bottom": [element, ...], "components": {"<component id>": element}, "cups": [element, ...]}.
// "cups" lists the extra free cup colors (see propagate); both it and "components" may be omitted.
struct BottomSpec {
    std::vector<Element> bottom;
    std::map<std::size_t, Element> components;
    std::vector<Element> cups;
};
GColoring propagate(const GroupPtr& G, const SlicedDiagram& d, const BottomSpec& b, double tol = 1e-8);
BottomSpec read_bottom(const json& j, const FactorizableGroup& G);
json bottom_to_json(const BottomSpec& b, const FactorizableGroup& G);

// Coloring file: {"edges": [{"id": k, "color": element}, ...]} (the GColoring::to_json layout) or a plain
// array indexed by edge id. The coloring is re-propagated and rejected with InvalidColoring on mismatch.
GColoring read_coloring(const json& j, GroupPtr G, const SlicedDiagram& d, double tol = 1e-8);

// Seeded random free colors that satisfy every cap. Draws are rejected until one propagates; infinite
// backends then fall back to a single random plus-subgroup color on every free slot. Throws UnderDetermined
// if nothing fits.
BottomSpec random_bottom(const GroupPtr& G, const SlicedDiagram& d, std::mt19937_64& rng, double tol = 1e-8);

}  // namespace hol
