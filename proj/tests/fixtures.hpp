#pragma once

#include <string>
#include <vector>

#include "holonomy/diagram.hpp"

namespace fixtures {

inline std::string path(const std::string& rel) { return std::string(HOL_DATA_DIR) + "/" + rel; }

inline hol::SlicedDiagram diagram(const std::string& name) {
    return hol::load_diagram(path("diagrams/" + name + ".tngl"));
}

// Every shipped diagram.
inline const std::vector<std::string>& corpus() {
    static const std::vector<std::string> names = {
        "id2",    "sigma1",  "sigma1_inv", "braid_s1s2s1", "braid_mixed", "four_strand",
        "cross_ud", "cross_du", "cross_dd", "cap_tangle", "zigzag",      "curl",
        "curl_down", "unknot", "unknot_down", "unlink",   "hopf",        "trefoil",
    };
    return names;
}

}  // namespace fixtures

#include <random>

#include "holonomy/functor.hpp"
#include "holonomy/io.hpp"

namespace fixtures {

// Seeded random coloring of d over G, decorated with system `sys`.
inline hol::DecoratedDiagram decorated(const hol::SlicedDiagram& d, const std::string& group, const std::string& sys,
                                       std::uint64_t seed = 1) {
    auto G = hol::make_group(group);
    std::mt19937_64 rng(seed);
    hol::GColoring c = hol::propagate(G, d, hol::random_bottom(G, d, rng));
    return hol::decorate(d, c, hol::make_system(sys, G));
}

inline hol::DecoratedDiagram decorated(const std::string& name, const std::string& group, const std::string& sys,
                                       std::uint64_t seed = 1) {
    return decorated(diagram(name), group, sys, seed);
}

}  // namespace fixtures

namespace fixtures {

// Identity tangle on a signature written as "u d ...".
inline hol::SlicedDiagram identity(const std::string& sig) {
    hol::Signature s;
    for (char ch : sig)
        if (ch == 'u' || ch == 'd') s.push_back(ch == 'u' ? hol::Orientation::Up : hol::Orientation::Down);
    return hol::SlicedDiagram::identity(s);
}

// lower below upper when their boundaries match (colored through the composite, so caps above hold),
// otherwise two independent colorings.
inline std::pair<hol::DecoratedDiagram, hol::DecoratedDiagram> pair(const std::string& lower, const std::string& upper,
                                                                    const std::string& group, const std::string& sys,
                                                                    std::uint64_t seed) {
    auto a = diagram(lower), b = diagram(upper);
    if (a.top() != b.bottom()) return {decorated(a, group, sys, seed), decorated(b, group, sys, seed + 1)};
    auto whole = decorated(hol::compose(a, b), group, sys, seed);
    hol::GColoring ca = whole.coloring, cb = whole.coloring;
    ca.levels.resize(a.levels().size());
    ca.orientations = a.levels();
    cb.levels.erase(cb.levels.begin(), cb.levels.begin() + a.row_count());
    cb.orientations = b.levels();
    return {hol::decorate(a, ca, whole.system), hol::decorate(b, cb, whole.system)};
}

}  // namespace fixtures
