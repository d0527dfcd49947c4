#include "holonomy/coloring.hpp"

#include <algorithm>
#include <optional>

#include "holonomy/errors.hpp"

namespace hol {

Element GColoring::normalized(std::size_t level, std::size_t pos) const {
    return eps_apply(*group, orientations.at(level).at(pos), raw(level, pos));
}

ColoredLine GColoring::line(std::size_t level) const {
    ColoredLine out;
    for (std::size_t k = 0; k < levels.at(level).size(); ++k) out.emplace_back(orientations[level][k], levels[level][k]);
    return out;
}

std::vector<Element> GColoring::by_edge() const {
    std::vector<Element> out;
    for (const auto& l : levels) out.insert(out.end(), l.begin(), l.end());
    return out;
}

json GColoring::to_json() const {
    json edges = json::array();
    std::size_t id = 0;
    for (std::size_t l = 0; l < levels.size(); ++l)
        for (std::size_t k = 0; k < levels[l].size(); ++k)
            edges.push_back({{"id", id++}, {"level", l}, {"position", k}, {"color", group->to_json(levels[l][k])}});
    return {{"group", group->id()}, {"edges", edges}};
}

std::pair<Element, Element> crossing_map(const FactorizableGroup& G, const Element& x, const Element& y) {
    Element xm = minus_part(G, x);
    Element a = prod(G, {xm, y, G.inv(xm)});
    Element ap = plus_part(G, a);
    return {a, prod(G, {G.inv(ap), x, ap})};
}

std::pair<Element, Element> crossing_map_inv(const FactorizableGroup& G, const Element& a, const Element& b) {
    Element ap = plus_part(G, a);
    Element x = prod(G, {ap, b, G.inv(ap)});
    Element xm = minus_part(G, x);
    return {x, prod(G, {G.inv(xm), a, xm})};
}

// ---------------------------------------------------------------- propagation

namespace {

// Free-group words over bottom generators and cup variables; letter = (variable, +-1).
using Word = std::vector<std::pair<std::size_t, int>>;

Word reduce(const Word& w) {
    Word out;
    for (const auto& t : w) {
        if (!out.empty() && out.back().first == t.first && out.back().second == -t.second) out.pop_back();
        else out.push_back(t);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.emplace_back(it->first, -it->second);
    return out;
}

Word concat(std::initializer_list<Word> ws) {
    Word out;
    for (const auto& w : ws) out.insert(out.end(), w.begin(), w.end());
    return reduce(out);
}

// Symbolic solver for cup variables: every cap imposes (left loop)(right loop) = 1.
struct CupSolver {
    std::size_t first_cup;
    std::map<std::size_t, Word> solved;

    bool is_cup(std::size_t v) const { return v >= first_cup; }

    Word expand(const Word& w) const {
        Word out;
        for (const auto& [v, s] : w) {
            auto it = solved.find(v);
            if (it == solved.end()) out.emplace_back(v, s);
            else {
                const Word& sub = s > 0 ? it->second : inverse(it->second);
                out.insert(out.end(), sub.begin(), sub.end());
            }
        }
        return reduce(out);
    }

    void impose(const Word& relation) {
        Word w = expand(relation);
        std::map<std::size_t, int> count;
        for (const auto& [v, s] : w)
            if (is_cup(v)) ++count[v];
        // Eliminate the most recent variable occurring once; earlier ones stay free.
        std::optional<std::size_t> pick;
        for (const auto& [v, n] : count)
            if (n == 1) pick = v;
        if (!pick) return;
        auto at = std::find_if(w.begin(), w.end(), [&](const auto& t) { return t.first == *pick; });
        Word a(w.begin(), at), b(at + 1, w.end());
        Word val = concat({inverse(a), inverse(b)});
        solved[*pick] = at->second > 0 ? val : inverse(val);
        for (auto& [v, sol] : solved) sol = expand(sol);
    }
};

std::string where(std::size_t row, std::size_t piece) {
    return "row " + std::to_string(row) + ", piece " + std::to_string(piece);
}

struct CupInfo {
    std::size_t var, row, slot, component;
};

struct Symbolic {
    CupSolver solver;
    std::vector<CupInfo> cups;
};

// Symbolic pass over loop words.
Symbolic symbolic_pass(const SlicedDiagram& d) {
    const std::size_t nb = d.bottom().size();
    Symbolic out{CupSolver{nb, {}}, {}};
    CupSolver& solver = out.solver;
    auto& cups = out.cups;
    {
        std::vector<Word> words;
        for (std::size_t k = 0; k < nb; ++k) words.push_back({{k, 1}});
        for (std::size_t r = 0; r < d.row_count(); ++r) {
            std::vector<Word> next;
            std::size_t k = 0;
            for (const auto& p : d.rows()[r]) {
                switch (p.kind) {
                    case PieceKind::Id: next.push_back(words[k]); break;
                    case PieceKind::PosCross:
                        next.push_back(words[k + 1]);
                        next.push_back(concat({inverse(words[k + 1]), words[k], words[k + 1]}));
                        break;
                    case PieceKind::NegCross:
                        next.push_back(concat({words[k], words[k + 1], inverse(words[k])}));
                        next.push_back(words[k]);
                        break;
                    case PieceKind::Cup: {
                        std::size_t v = nb + cups.size();
                        cups.push_back({v, r, next.size(), d.component_of(r + 1, next.size())});
                        next.push_back({{v, 1}});
                        next.push_back({{v, -1}});
                        break;
                    }
                    case PieceKind::Cap: solver.impose(concat({words[k], words[k + 1]})); break;
                }
                k += p.bottom_count();
            }
            words = std::move(next);
        }
    }
    return out;
}

}  // namespace

std::vector<FreeCup> free_cups(const SlicedDiagram& d) {
    Symbolic sym = symbolic_pass(d);
    std::vector<FreeCup> out;
    std::map<std::size_t, std::size_t> used;
    for (const auto& c : sym.cups) {
        if (sym.solver.solved.count(c.var)) continue;
        const bool first = !d.component_meets_bottom(c.component) && used[c.component]++ == 0;
        out.push_back({c.row, c.slot, c.component, first});
    }
    return out;
}

std::size_t extra_cup_count(const SlicedDiagram& d) {
    auto f = free_cups(d);
    return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](const FreeCup& c) { return !c.component_color; }));
}

FreeColors free_colors_of(const SlicedDiagram& d, const GColoring& c) {
    FreeColors out;
    for (const auto& cup : free_cups(d)) {
        const Element& raw = c.raw(cup.row + 1, cup.slot);
        if (cup.component_color) out.components[cup.component] = raw;
        else out.extra_cups.push_back(raw);
    }
    return out;
}

GColoring propagate(GroupPtr Gp, const SlicedDiagram& d, const ColoredLine& bottom,
                    const std::map<std::size_t, Element>& component_colors, double tol,
                    const std::vector<Element>& extra_cups) {
    if (bottom.size() != d.bottom().size())
        throw SignatureMismatch("bottom colors: expected " + std::to_string(d.bottom().size()) + " entries");
    std::vector<Element> raw;
    for (std::size_t k = 0; k < bottom.size(); ++k) {
        if (bottom[k].first != d.bottom()[k]) throw SignatureMismatch("bottom color orientation differs from the diagram");
        raw.push_back(bottom[k].second);
    }
    return propagate(std::move(Gp), d, raw, component_colors, tol, extra_cups);
}

GColoring propagate(GroupPtr Gp, const SlicedDiagram& d, const std::vector<Element>& bottom,
                    const std::map<std::size_t, Element>& component_colors, double tol,
                    const std::vector<Element>& extra_cups) {
    const FactorizableGroup& G = *Gp;
    const std::size_t nb = d.bottom().size();
    if (bottom.size() != nb) throw SignatureMismatch("bottom colors: expected " + std::to_string(nb) + " entries");
    for (const auto& [comp, col] : component_colors) {
        if (comp >= d.component_count()) throw InvalidColoring("no component " + std::to_string(comp));
        if (d.component_meets_bottom(comp))
            throw InvalidColoring("component " + std::to_string(comp) + " meets the bottom; its colors are determined");
    }

    Symbolic sym = symbolic_pass(d);
    CupSolver& solver = sym.solver;
    const auto& cups = sym.cups;

    // Unsolved cups: the first of a closed component takes the component color, the rest consume extra_cups.
    std::map<std::size_t, Element> free_raw;
    {
        std::map<std::size_t, std::size_t> used;
        std::size_t next_extra = 0;
        for (const auto& c : cups) {
            if (solver.solved.count(c.var)) continue;
            auto it = component_colors.find(c.component);
            if (!d.component_meets_bottom(c.component) && used[c.component]++ == 0) {
                if (it == component_colors.end())
                    throw UnderDetermined("component " + std::to_string(c.component) +
                                          " is not fixed by the bottom colors; supply a component color");
                free_raw.emplace(c.var, it->second);
                continue;
            }
            if (next_extra >= extra_cups.size())
                throw UnderDetermined("cup at row " + std::to_string(c.row) + " (component " +
                                      std::to_string(c.component) + ") needs an extra free color");
            free_raw.emplace(c.var, extra_cups[next_extra++]);
        }
        if (next_extra != extra_cups.size())
            throw InvalidColoring("too many extra cup colors: " + std::to_string(extra_cups.size()) + " given, " +
                                  std::to_string(next_extra) + " used");
    }

    // Numeric pass.
    GColoring out;
    out.group = Gp;
    out.orientations = d.levels();
    std::map<std::size_t, Element> value;  // numeric loop value of each variable
    std::vector<Element> cur;
    {
        Element pre = G.identity();
        for (std::size_t k = 0; k < nb; ++k) {
            Element n = eps_apply(G, d.bottom()[k], bottom[k]);
            value.emplace(k, prod(G, {pre, n, G.inv(pre)}));
            pre = G.mul(pre, minus_part(G, n));
            cur.push_back(n);
        }
    }
    auto eval = [&](const Word& w) {
        Element r = G.identity();
        for (const auto& [v, s] : solver.expand(w)) {
            auto it = value.find(v);
            if (it == value.end()) throw UnderDetermined("cup color depends on a later free component");
            r = G.mul(r, s > 0 ? it->second : G.inv(it->second));
        }
        return r;
    };
    auto to_raw = [&](std::size_t level, const std::vector<Element>& line) {
        std::vector<Element> raw;
        for (std::size_t k = 0; k < line.size(); ++k) raw.push_back(eps_apply(G, d.level(level)[k], line[k]));
        return raw;
    };
    out.levels.push_back(to_raw(0, cur));

    std::size_t cup_index = 0;
    for (std::size_t r = 0; r < d.row_count(); ++r) {
        std::vector<Element> next;
        Element pre = G.identity();  // product of minus parts of the top edges already placed
        std::size_t k = 0;
        const Row& row = d.rows()[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Piece& p = row[i];
            const std::size_t before = next.size();
            try {
                switch (p.kind) {
                    case PieceKind::Id: next.push_back(cur[k]); break;
                    case PieceKind::PosCross: {
                        auto [a, b] = crossing_map(G, cur[k], cur[k + 1]);
                        next.push_back(a);
                        next.push_back(b);
                        break;
                    }
                    case PieceKind::NegCross: {
                        auto [a, b] = crossing_map_inv(G, cur[k], cur[k + 1]);
                        next.push_back(a);
                        next.push_back(b);
                        break;
                    }
                    case PieceKind::Cup: {
                        const CupInfo& c = cups[cup_index++];
                        Element nl;
                        auto fr = free_raw.find(c.var);
                        if (fr != free_raw.end()) {
                            nl = eps_apply(G, p.o1, fr->second);
                            value.emplace(c.var, prod(G, {pre, nl, G.inv(pre)}));
                        } else {
                            Element gamma = eval({{c.var, 1}});
                            nl = prod(G, {G.inv(pre), gamma, pre});
                            value.emplace(c.var, gamma);
                        }
                        next.push_back(nl);
                        next.push_back(star_inv(G, nl));
                        break;
                    }
                    case PieceKind::Cap: {
                        Element l = eps_apply(G, p.o1, cur[k]), rr = eps_apply(G, p.o2, cur[k + 1]);
                        double dev = G.distance(l, rr);
                        if (dev > (G.is_finite() ? 0.0 : tol))
                            throw InvalidColoring("cap at " + where(r, i) + " joins edges of different colors (deviation " +
                                                  std::to_string(dev) + ")");
                        break;
                    }
                }
                for (std::size_t j = before; j < next.size(); ++j) pre = G.mul(pre, minus_part(G, next[j]));
            } catch (const NonGeneric& e) {
                throw NonGeneric("at " + where(r, i) + ": " + e.what());
            }
            k += p.bottom_count();
        }
        cur = std::move(next);
        out.levels.push_back(to_raw(r + 1, cur));
    }
    return out;
}

// ---------------------------------------------------------------- holonomies

namespace {

std::vector<Element> line_holonomies(const FactorizableGroup& G, const ColoredLine& line) {
    std::vector<Element> out;
    Element c = G.identity();
    for (const auto& [o, x] : line) {
        out.push_back(prod(G, {c, eps_apply(G, o, x), G.inv(c)}));
        c = G.mul(c, power(G, minus_part(G, x), sign(o)));
    }
    return out;
}

}  // namespace

Element holonomy_of_edge(const SlicedDiagram& d, const GColoring& c, std::size_t edge) {
    const auto& info = d.edges().at(edge);
    return line_holonomies(*c.group, c.line(info.level)).at(info.position);
}

HolonomyAssignment holonomies(const SlicedDiagram& d, const GColoring& c) {
    HolonomyAssignment out;
    for (std::size_t l = 0; l < d.levels().size(); ++l) {
        auto h = line_holonomies(*c.group, c.line(l));
        out.insert(out.end(), h.begin(), h.end());
    }
    return out;
}

json WirtingerReport::to_json() const {
    json rel = json::array();
    for (const auto& r : relations)
        rel.push_back({{"row", r.row}, {"piece", r.piece}, {"relation", r.relation}, {"deviation", r.deviation},
                       {"pass", r.pass}});
    return {{"pass", pass}, {"worst_deviation", worst}, {"relations", rel}};
}

WirtingerReport check_wirtinger(const FactorizableGroup& G, const SlicedDiagram& d, const HolonomyAssignment& h,
                                double tol) {
    if (h.size() != d.edge_count()) throw ShapeMismatch("holonomy assignment does not cover every edge");
    WirtingerReport rep;
    auto record = [&](std::size_t r, std::size_t i, const char* name, const Element& lhs, const Element& rhs) {
        double dev = G.distance(lhs, rhs);
        bool ok = dev <= (G.is_finite() ? 0.0 : tol);
        rep.relations.push_back({r, i, name, dev, ok});
        rep.worst = std::max(rep.worst, dev);
        rep.pass = rep.pass && ok;
    };
    for (std::size_t r = 0; r < d.row_count(); ++r) {
        std::size_t kb = 0, kt = 0;
        const Row& row = d.rows()[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Piece& p = row[i];
            auto b = [&](std::size_t j) { return h[d.edge_id(r, kb + j)]; };
            auto t = [&](std::size_t j) { return h[d.edge_id(r + 1, kt + j)]; };
            switch (p.kind) {
                case PieceKind::Id: record(r, i, "id", t(0), b(0)); break;
                case PieceKind::PosCross:
                    record(r, i, "over", t(0), b(1));
                    record(r, i, "under", t(1), prod(G, {G.inv(b(1)), b(0), b(1)}));
                    break;
                case PieceKind::NegCross:
                    record(r, i, "under", t(0), prod(G, {b(0), b(1), G.inv(b(0))}));
                    record(r, i, "over", t(1), b(0));
                    break;
                case PieceKind::Cup: record(r, i, "extremum", G.mul(t(0), t(1)), G.identity()); break;
                case PieceKind::Cap: record(r, i, "extremum", G.mul(b(0), b(1)), G.identity()); break;
            }
            kb += p.bottom_count();
            kt += p.top_count();
        }
    }
    return rep;
}

std::vector<Element> cumulative_holonomies(const FactorizableGroup& G, const ColoredLine& colors) {
    // gamma_i = (g_1)_+^{e_1}...(g_i)_+^{e_i} (g_i)_-^{-e_i}...(g_1)_-^{-e_1}
    std::vector<Element> out;
    Element plus = G.identity(), minus = G.identity();
    for (const auto& [o, g] : colors) {
        auto [gp, gm] = G.split(g);
        plus = G.mul(plus, power(G, gp, sign(o)));
        minus = G.mul(power(G, gm, -sign(o)), minus);
        out.push_back(G.mul(plus, minus));
    }
    return out;
}

std::vector<Element> colors_from_holonomies(const FactorizableGroup& G, const std::vector<Element>& gammas,
                                            const Signature& eps) {
    if (gammas.size() != eps.size()) throw ShapeMismatch("holonomy and orientation lists differ in length");
    std::vector<Element> out;
    Element prev = G.identity();
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        auto [pp, pm] = G.split(prev);
        Element n = prod(G, {G.inv(pp), gammas[i], pm});
        out.push_back(eps_apply(G, eps[i], n));
        prev = gammas[i];
    }
    return out;
}

Element standard_ramification(const FactorizableGroup& G, const ColoredLine& colors) {
    Element g = G.identity();
    for (const auto& [o, x] : colors) g = G.mul(g, power(G, minus_part(G, x), -sign(o)));
    return g;
}

ColoredLine gauge_alpha_line(const FactorizableGroup& G, const Element& x, const ColoredLine& colors) {
    ColoredLine out;
    auto gam = cumulative_holonomies(G, colors);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        Element xi = i == 0 ? x : dress(G, x, gam[i - 1]);
        const auto& [o, g] = colors[i];
        Element n = prod(G, {xi, eps_apply(G, o, g), G.inv(xi)});
        out.emplace_back(o, eps_apply(G, o, n));
    }
    return out;
}

GColoring gauge_alpha(const Element& x, const SlicedDiagram& d, const GColoring& c) {
    GColoring out;
    out.group = c.group;
    out.orientations = c.orientations;
    for (std::size_t l = 0; l < d.levels().size(); ++l) {
        std::vector<Element> raw;
        for (auto& [o, g] : gauge_alpha_line(*c.group, x, c.line(l))) raw.push_back(g);
        out.levels.push_back(std::move(raw));
    }
    return out;
}

ColoredLine gauge_alpha_plus(const FactorizableGroup& G, const Element& xp, const ColoredLine& colors) {
    if (!G.in_plus(xp)) throw SubgroupViolation("gauge_alpha_plus needs an element of G+");
    // P_i = (B_{i-1} x^{-1})_+^{-1}, B_{i-1} = (g_{i-1})_-^{-e}...(g_1)_-^{-e}
    ColoredLine out;
    Element B = G.identity();
    for (const auto& [o, g] : colors) {
        Element P = G.inv(plus_part(G, G.mul(B, G.inv(xp))));
        Element n = prod(G, {P, eps_apply(G, o, g), G.inv(P)});
        out.emplace_back(o, eps_apply(G, o, n));
        B = G.mul(power(G, minus_part(G, g), -sign(o)), B);
    }
    return out;
}

ColoredLine gauge_alpha_minus(const FactorizableGroup& G, const Element& xm, const ColoredLine& colors) {
    if (!G.in_minus(xm)) throw SubgroupViolation("gauge_alpha_minus needs an element of G-");
    // Q_i = (x A_{i-1})_-^{-1}, A_{i-1} = (g_1)_+^{e}...(g_{i-1})_+^{e}
    ColoredLine out;
    Element A = G.identity();
    for (const auto& [o, g] : colors) {
        Element Q = G.inv(minus_part(G, G.mul(xm, A)));
        Element n = prod(G, {Q, eps_apply(G, o, g), G.inv(Q)});
        out.emplace_back(o, eps_apply(G, o, n));
        A = G.mul(A, power(G, plus_part(G, g), sign(o)));
    }
    return out;
}

}  // namespace hol
