#include "holonomy/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "holonomy/errors.hpp"

namespace hol {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

std::string diagram_hash(const SlicedDiagram& d) { return hash_hex(render(d)); }
std::string coloring_hash(const GColoring& c) { return hash_hex(c.to_json().dump()); }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("cannot parse " + path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

Element element_from_text(const FactorizableGroup& G, const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) j = text;
    return G.from_json(j);
}

BottomSpec read_bottom(const json& j, const FactorizableGroup& G) {
    BottomSpec b;
    try {
        for (const auto& e : j.at("bottom")) b.bottom.push_back(G.from_json(e));
        if (j.contains("components"))
            for (const auto& [k, v] : j.at("components").items()) b.components[std::stoul(k)] = G.from_json(v);
        if (j.contains("cups"))
            for (const auto& e : j.at("cups")) b.cups.push_back(G.from_json(e));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed bottom-color file: ") + e.what());
    } catch (const std::logic_error&) {
        throw InputError("component keys must be non-negative integers");
    }
    return b;
}

json bottom_to_json(const BottomSpec& b, const FactorizableGroup& G) {
    json bottom = json::array(), comps = json::object(), cups = json::array();
    for (const auto& e : b.bottom) bottom.push_back(G.to_json(e));
    for (const auto& [k, v] : b.components) comps[std::to_string(k)] = G.to_json(v);
    for (const auto& e : b.cups) cups.push_back(G.to_json(e));
    return {{"bottom", bottom}, {"components", comps}, {"cups", cups}};
}

GColoring propagate(const GroupPtr& G, const SlicedDiagram& d, const BottomSpec& b, double tol) {
    return propagate(G, d, b.bottom, b.components, tol, b.cups);
}

GColoring read_coloring(const json& j, GroupPtr G, const SlicedDiagram& d, double tol) {
    std::vector<Element> edges(d.edge_count());
    std::vector<bool> seen(d.edge_count(), false);
    try {
        const json& list = j.is_object() ? j.at("edges") : j;
        for (std::size_t k = 0; k < list.size(); ++k) {
            const json& e = list[k];
            std::size_t id = e.is_object() ? e.at("id").get<std::size_t>() : k;
            if (id >= edges.size()) throw InvalidColoring("edge id " + std::to_string(id) + " out of range");
            edges[id] = G->from_json(e.is_object() ? e.at("color") : e);
            seen[id] = true;
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed coloring file: ") + e.what());
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k]) throw InvalidColoring("edge " + std::to_string(k) + " has no color");

    GColoring c;
    c.group = G;
    c.orientations = d.levels();
    for (std::size_t l = 0; l < d.levels().size(); ++l) {
        std::vector<Element> line;
        for (std::size_t k = 0; k < d.level(l).size(); ++k) line.push_back(edges[d.edge_id(l, k)]);
        c.levels.push_back(std::move(line));
    }
    FreeColors free = free_colors_of(d, c);
    GColoring check = propagate(G, d, c.levels.at(0), free.components, tol, free.extra_cups);
    for (std::size_t l = 0; l < c.levels.size(); ++l)
        for (std::size_t k = 0; k < c.levels[l].size(); ++k)
            if (!G->equal(c.levels[l][k], check.levels[l][k], tol))
                throw InvalidColoring("edge " + std::to_string(d.edge_id(l, k)) +
                                      " violates the crossing/extremum rules");
    return c;
}

BottomSpec random_bottom(const GroupPtr& G, const SlicedDiagram& d, std::mt19937_64& rng, double tol) {
    const std::size_t extra = extra_cup_count(d);
    std::vector<std::size_t> closed;
    for (std::size_t c = 0; c < d.component_count(); ++c)
        if (!d.component_meets_bottom(c)) closed.push_back(c);
    auto fill = [&](auto&& draw) {
        BottomSpec b;
        for (std::size_t k = 0; k < d.bottom().size(); ++k) b.bottom.push_back(draw());
        for (std::size_t c : closed) b.components[c] = draw();
        for (std::size_t k = 0; k < extra; ++k) b.cups.push_back(draw());
        return b;
    };
    auto fits = [&](const BottomSpec& b) {
        try {
            propagate(G, d, b, tol);
            return true;
        } catch (const InvalidColoring&) {
            return false;
        } catch (const NonGeneric&) {
            return false;
        }
    };
    const int attempts = G->is_finite() ? 4096 : 64;
    for (int i = 0; i < attempts; ++i) {
        BottomSpec b = fill([&] { return G->sample(rng); });
        if (fits(b)) return b;
    }
    if (!G->is_finite()) {
        // Plus-subgroup colors have trivial minus part, so equal colors pass every crossing unchanged.
        for (int i = 0; i < 16; ++i) {
            const Element x = plus_part(*G, G->sample(rng));
            BottomSpec b = fill([&] { return x; });
            if (fits(b)) return b;
        }
    }
    throw UnderDetermined("no random coloring satisfies every cap; supply --bottom");
}

}  // namespace hol
