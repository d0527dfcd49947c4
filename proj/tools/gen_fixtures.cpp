// Regenerates the JSON fixtures under data/: group table, R-matrix files, bottom colors.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "holonomy/errors.hpp"
#include "holonomy/io.hpp"
#include "holonomy/linear_map.hpp"
#include "holonomy/rmatrix.hpp"

using namespace hol;
namespace fs = std::filesystem;

namespace {

void put(const fs::path& p, const json& j) {
    fs::create_directories(p.parent_path());
    write_text(p.string(), j.dump(2) + "\n");
    std::cout << "wrote " << p.string() << "\n";
}

SlicedDiagram load_diagram(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw InputError("cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

// First free-color assignment, in enumeration order, whose coloring uses more than one element.
BottomSpec nontrivial_coloring(const GroupPtr& G, const SlicedDiagram& d) {
    const auto els = G->elements();
    const std::size_t nb = d.bottom().size(), extra = extra_cup_count(d);
    std::vector<std::size_t> closed;
    for (std::size_t c = 0; c < d.component_count(); ++c)
        if (!d.component_meets_bottom(c)) closed.push_back(c);
    const std::size_t slots = nb + closed.size() + extra;
    std::vector<std::size_t> idx(slots, 0);
    while (true) {
        BottomSpec b;
        std::size_t k = 0;
        for (; k < nb; ++k) b.bottom.push_back(els[idx[k]]);
        for (std::size_t c : closed) b.components[c] = els[idx[k++]];
        for (std::size_t e = 0; e < extra; ++e) b.cups.push_back(els[idx[k++]]);
        try {
            GColoring c = propagate(G, d, b);
            auto all = c.by_edge();
            bool varied = false;
            for (const auto& x : all) varied = varied || !G->equal(x, all.front());
            if (varied) return b;
        } catch (const InvalidColoring&) {
        }
        std::size_t i = 0;
        while (i < slots && ++idx[i] == els.size()) idx[i++] = 0;
        if (i == slots) break;
    }
    throw UnderDetermined("no nontrivial coloring");
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path root = argc > 1 ? argv[1] : "data";
    try {
        put(root / "groups" / "s3.json", symmetric3()->description());

        const cplx q(0.7, 0.2);
        const Matrix R = quantum_sl2(q);
        put(root / "systems" / "qsl2.json", {{"space", {{"name", "V"}, {"dim", 2}}}, {"matrix", matrix_to_json(R)}});
        Matrix bad = R;
        bad(1, 2) += cplx(0.05, 0.0);
        put(root / "systems" / "qsl2_perturbed.json",
            {{"space", {{"name", "V"}, {"dim", 2}}}, {"matrix", matrix_to_json(bad)}});

        const GroupPtr G = symmetric3();
        for (const char* name : {"trefoil", "hopf", "cap_tangle", "braid_s1s2s1", "sigma1"}) {
            SlicedDiagram d = load_diagram(root / "diagrams" / (std::string(name) + ".tngl"));
            put(root / "colors" / (std::string(name) + "_s3.json"), bottom_to_json(nontrivial_coloring(G, d), *G));
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
