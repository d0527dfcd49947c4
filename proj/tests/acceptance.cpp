// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/functor.hpp"
#include "holonomy/rmatrix.hpp"
#include "oracles.hpp"

using namespace hol;

namespace {

constexpr double kFactorTol = 1e-10;
constexpr double kRoundTripTol = 1e-10;
constexpr double kHybeConstTol = 1e-10;
constexpr double kHybePerturbMin = 1e-3;
constexpr double kDInvTol = 1e-10;
constexpr double kIdentityTol = 1e-9;
constexpr double kFunctorTol = 1e-10;
constexpr double kTrefoilTol = 1e-9;
constexpr double kUnlinkTol = 1e-12;
constexpr double kGaugeTol = 1e-9;
constexpr double kLinkGaugeTol = 1e-10;

const cplx q0(0.7, 0.2);
const SpaceLabel V{"V", 2};

struct Outcome {
    bool pass = true;
    std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
    if (!ok && o.pass) o.detail = what;
    o.pass = o.pass && ok;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Corpus for coloring criteria: at most 4 strands and 4 crossings.
std::vector<std::string> small_corpus() {
    std::vector<std::string> out;
    for (const auto& n : fixtures::corpus()) {
        auto d = fixtures::diagram(n);
        std::size_t w = 0;
        for (const auto& l : d.levels()) w = std::max(w, l.size());
        if (w <= 4 && d.crossing_count() <= 4) out.push_back(n);
    }
    return out;
}

std::vector<GColoring> s3_colorings(const SlicedDiagram& d) {
    const auto G = symmetric3();
    const auto els = G->elements();
    std::vector<std::size_t> closed;
    for (std::size_t c = 0; c < d.component_count(); ++c)
        if (!d.component_meets_bottom(c)) closed.push_back(c);
    const std::size_t nb = d.bottom().size(), slots = nb + closed.size() + extra_cup_count(d);
    std::vector<std::size_t> idx(slots, 0);
    std::vector<GColoring> out;
    while (true) {
        BottomSpec b;
        std::size_t k = 0;
        for (; k < nb; ++k) b.bottom.push_back(els[idx[k]]);
        for (std::size_t c : closed) b.components[c] = els[idx[k++]];
        while (k < slots) b.cups.push_back(els[idx[k++]]);
        try {
            out.push_back(propagate(G, d, b));
        } catch (const InvalidColoring&) {
        }
        std::size_t i = 0;
        while (i < slots && ++idx[i] == els.size()) idx[i++] = 0;
        if (i == slots) break;
    }
    return out;
}

Outcome c1_factorization() {
    Outcome o;
    auto S3 = symmetric3();
    for (const auto& g : S3->elements()) {
        auto f = S3->factorize(g);
        auto r = oracle::s3_factorize(oracle::perm(S3->name_of(g)));
        require(o, oracle::name(r.plus) == S3->name_of(f.g_plus) && oracle::name(r.minus) == S3->name_of(f.g_minus),
                "S3 factorization of " + S3->name_of(g));
    }
    auto G = make_group("sl2");
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        Element g = G->sample(rng);
        auto f = G->factorize(g);
        worst = std::max({worst, G->distance(G->mul(f.g_plus, G->inv(f.g_minus)), g),
                          G->distance(G->mul(G->inv(f.bar_minus), f.bar_plus), g)});
        require(o, G->in_plus(f.g_plus) && G->in_minus(f.g_minus), "SL2 factors leave their subgroups");
    }
    require(o, worst <= kFactorTol, "SL2 reconstruction " + num(worst));
    if (o.pass) o.detail = "S3 exhaustive, 1000 SL2 samples, max error " + num(worst);
    return o;
}

Outcome c2_star_group() {
    Outcome o;
    const auto& G = *symmetric3();
    std::size_t triples = 0;
    for (const auto& a : G.elements()) {
        require(o, G.equal(star(G, a, star_inv(G, a)), G.identity()), "star inverse");
        require(o, G.equal(star(G, a, G.identity()), a), "star unit");
        for (const auto& b : G.elements())
            for (const auto& c : G.elements()) {
                require(o, G.equal(star(G, star(G, a, b), c), star(G, a, star(G, b, c))), "star associativity");
                ++triples;
            }
    }
    if (o.pass) o.detail = std::to_string(triples) + " triples associative, inverses and unit exact";
    return o;
}

Outcome c3_dressing() {
    Outcome o;
    const auto& G = *symmetric3();
    for (const auto& x : G.elements())
        for (const auto& g : G.elements()) {
            Element d;
            try {
                d = dress(G, x, g);  // compares both closed forms internally
            } catch (const InconsistentDressing&) {
                require(o, false, "closed forms disagree");
                continue;
            }
            if (G.in_plus(x)) require(o, G.equal(dress_plus(G, x, g), d) && G.in_plus(d), "plus dressing");
            if (G.in_minus(x)) require(o, G.equal(dress_minus(G, x, g), d) && G.in_minus(d), "minus dressing");
        }
    if (o.pass) o.detail = "36 pairs, both closed forms and subgroup forms agree";
    return o;
}

Outcome c4_coloring_holonomy() {
    Outcome o;
    const auto corpus = small_corpus();
    require(o, corpus.size() >= 10, "corpus has only " + std::to_string(corpus.size()) + " diagrams");
    const auto& G = *symmetric3();
    std::size_t colorings = 0;
    for (const auto& name : corpus) {
        auto d = fixtures::diagram(name);
        for (const auto& c : s3_colorings(d)) {
            ++colorings;
            require(o, check_wirtinger(G, d, holonomies(d, c)).pass, "Wirtinger relation on " + name);
            for (std::size_t l = 0; l < c.levels.size(); ++l) {
                auto line = c.line(l);
                auto back = colors_from_holonomies(G, cumulative_holonomies(G, line), d.level(l));
                for (std::size_t k = 0; k < line.size(); ++k)
                    require(o, G.equal(back[k], line[k].second), "S3 round trip on " + name);
            }
        }
    }
    // Closed forms around a negative crossing met by an auxiliary strand.
    for (auto e : {Orientation::Up, Orientation::Down})
        for (const auto& x : G.elements())
            for (const auto& y : G.elements()) {
                SlicedDiagram p({Orientation::Up, e}, {{Piece::cross(false, Orientation::Up, e)}});
                GColoring c = propagate(symmetric3(), p, std::vector<Element>{x, y});
                const Element xp = plus_part(G, x);
                require(o, G.equal(c.normalized(1, 0), prod(G, {xp, eps_apply(G, e, y), G.inv(xp)})), "+cross colour");
                Element inner = G.mul(power(G, minus_part(G, y), -sign(e)), G.inv(xp));
                require(o, G.equal(plus_part(G, c.raw(1, 1)), G.inv(plus_part(G, inner))), "+cross auxiliary");

                SlicedDiagram m({e, Orientation::Up}, {{Piece::cross(false, e, Orientation::Up)}});
                GColoring cm = propagate(symmetric3(), m, std::vector<Element>{y, x});
                const Element xm = minus_part(G, cm.raw(1, 0));
                require(o, G.equal(cm.normalized(1, 1), prod(G, {G.inv(xm), eps_apply(G, e, y), xm})), "-cross colour");
                Element inner_m = G.mul(G.inv(xm), power(G, plus_part(G, y), sign(e)));
                require(o, G.equal(minus_part(G, x), minus_part(G, inner_m)), "-cross auxiliary");
            }
    auto S = make_group("sl2");
    std::mt19937_64 rng(104);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        ColoredLine line;
        Signature eps;
        for (int j = 0; j < 3; ++j) {
            Orientation or_ = rng() % 2 ? Orientation::Up : Orientation::Down;
            line.emplace_back(or_, S->sample(rng));
            eps.push_back(or_);
        }
        auto back = colors_from_holonomies(*S, cumulative_holonomies(*S, line), eps);
        for (int j = 0; j < 3; ++j) worst = std::max(worst, S->distance(back[j], line[j].second));
    }
    require(o, worst <= kRoundTripTol, "SL2 round trip " + num(worst));
    if (o.pass)
        o.detail = std::to_string(corpus.size()) + " diagrams, " + std::to_string(colorings) +
                   " S3 colorings, SL2 round trip " + num(worst);
    return o;
}

Outcome c5_gauge_intertwining() {
    Outcome o;
    const auto& G = *symmetric3();
    for (const auto& name : fixtures::corpus()) {
        auto d = fixtures::diagram(name);
        auto cs = s3_colorings(d);
        for (std::size_t k = 0; k < cs.size(); k += std::max<std::size_t>(1, cs.size() / 12)) {
            auto h = holonomies(d, cs[k]);
            for (const auto& x : G.elements()) {
                auto hx = holonomies(d, gauge_alpha(x, d, cs[k]));
                for (std::size_t e = 0; e < h.size(); ++e)
                    require(o, G.equal(hx[e], prod(G, {x, h[e], G.inv(x)})), "holonomy not conjugated on " + name);
                for (std::size_t l = 0; l < cs[k].levels.size(); ++l) {
                    auto line = cs[k].line(l);
                    auto gen = gauge_alpha_line(G, x, line);
                    if (G.in_plus(x)) {
                        auto p = gauge_alpha_plus(G, x, line);
                        for (std::size_t j = 0; j < p.size(); ++j)
                            require(o, G.equal(p[j].second, gen[j].second), "plus form on " + name);
                    }
                    if (G.in_minus(x)) {
                        auto m = gauge_alpha_minus(G, x, line);
                        for (std::size_t j = 0; j < m.size(); ++j)
                            require(o, G.equal(m[j].second, gen[j].second), "minus form on " + name);
                    }
                }
            }
        }
    }
    if (o.pass) o.detail = "all x in S3, all fixtures: holonomies conjugated, subgroup forms agree";
    return o;
}

Outcome c6_hybe() {
    Outcome o;
    auto G = make_group("sl2");
    ScalarSystem sc(G, cplx(0.8, 0.1), {V});
    ConstantSystem cs(G, V, quantum_sl2(q0), "qsl2");
    Matrix bad = quantum_sl2(q0);
    bad(1, 2) += 0.05;
    ConstantSystem pert(G, V, bad, "perturbed");
    std::mt19937_64 rng(106);
    double ws = 0.0, wc = 0.0, wp = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
        Element x = G->sample(rng), y = G->sample(rng), z = G->sample(rng);
        ws = std::max(ws, check_hybe(sc, V, V, V, x, y, z).residual);
        wc = std::max(wc, check_hybe(cs, V, V, V, x, y, z).residual);
        wp = std::min(wp, check_hybe(pert, V, V, V, x, y, z).residual);
    }
    require(o, ws == 0.0, "scalar residual " + num(ws));
    require(o, wc <= kHybeConstTol, "constant residual " + num(wc));
    require(o, wp >= kHybePerturbMin, "perturbed residual only " + num(wp));
    if (o.pass) o.detail = "scalar 0, constant " + num(wc) + ", perturbed >= " + num(wp);
    return o;
}

Outcome c7_d_w() {
    Outcome o;
    double dinv = 0.0, ids = 0.0;
    std::size_t literal_fail = 0;
    for (const std::string g : {"s3", "sl2"}) {
        auto G = make_group(g);
        for (const std::string s : {"qsl2", "gauged-qsl2", "scalar:0.9,0.3"}) {
            auto sys = make_system(s, G);
            std::mt19937_64 rng(107);
            for (int k = 0; k < 30; ++k) {
                Element x = G->sample(rng), y = G->sample(rng);
                Matrix dd = d_op(*sys, V, x).m * d_op_inv(*sys, V, x).m;
                dinv = std::max(dinv, frobenius(dd - Matrix::Identity(2, 2)));
                for (const auto& it : check_identities(*sys, V, V, x, y).items) {
                    if (it.asserted) ids = std::max(ids, it.residual);
                    else literal_fail += !it.pass;
                }
            }
        }
    }
    require(o, dinv <= kDInvTol, "d d^-1 " + num(dinv));
    require(o, ids <= kIdentityTol, "identity residual " + num(ids));
    if (o.pass)
        o.detail = "d d^-1 " + num(dinv) + ", identities " + num(ids) + " (alternative readings failing: " +
                   std::to_string(literal_fail) + ")";
    return o;
}

Outcome c8_functor() {
    Outcome o;
    double worst = 0.0;
    auto track = [&](double r, const std::string& what) {
        worst = std::max(worst, r);
        require(o, r <= kFunctorTol, what + " " + num(r));
    };
    for (const std::string g : {"s3", "sl2"}) {
        for (const std::string sig : {"u u", "u d", "d u", "d d"}) {
            auto d = fixtures::identity(sig);
            track(frobenius(evaluate(fixtures::decorated(d, g, "gauged-qsl2")).m - Matrix::Identity(4, 4)), "F(id)");
            for (int v = 0; v < 2; ++v) {
                auto r2 = apply_move(d, MoveKind::R2, {0, 0, Direction::Insert, v});
                track(frobenius(evaluate(fixtures::decorated(r2, g, "gauged-qsl2")).m - Matrix::Identity(4, 4)),
                      "crossing inverse " + sig);
            }
        }
        for (const std::string z : {"@bottom u\n|u U(du)\nA(ud) |u\n", "@bottom u\nU(ud) |u\n|u A(du)\n",
                                    "@bottom d\nU(du) |d\n|d A(ud)\n", "@bottom d\n|d U(ud)\nA(du) |d\n"})
            track(frobenius(evaluate(fixtures::decorated(parse(z), g, "gauged-qsl2")).m - Matrix::Identity(2, 2)),
                  "zig-zag");
        for (const auto& name : fixtures::corpus()) {
            auto dd = fixtures::decorated(name, g, "gauged-qsl2", 108);
            for (auto m : {MoveKind::R2, MoveKind::R3, MoveKind::R1Framed})
                for (std::size_t row = 0; row <= dd.diagram.row_count(); ++row)
                    for (std::size_t s = 0; s < 4; ++s)
                        for (auto dir : {Direction::Insert, Direction::Remove})
                            for (int v = 0; v < 2; ++v) {
                                try {
                                    track(check_reidemeister(dd, m, {row, s, dir, v}).residual,
                                          to_string(m) + " on " + name);
                                } catch (const PatternMismatch&) {
                                }
                            }
        }
        for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
                 {"sigma1", "sigma1_inv"}, {"braid_mixed", "cap_tangle"}, {"cross_ud", "cross_du"}}) {
            auto [d1, d2] = fixtures::pair(a, b, g, "gauged-qsl2", 109);
            auto rep = check_functoriality(d1, d2);
            track(std::max({rep.compose_residual, rep.tensor_residual, rep.holonomy_residual}), "functoriality");
        }
    }
    if (o.pass) o.detail = "identities, zig-zags, moves, composition and tensor: max " + num(worst);
    return o;
}

Outcome c9_links() {
    Outcome o;
    SlicedDiagram t1 = fixtures::diagram("trefoil");
    SlicedDiagram t2 = apply_move(t1, MoveKind::R2, {3, 1, Direction::Insert, 0});
    t2 = apply_move(t2, MoveKind::R2, {6, 1, Direction::Insert, 0});
    t2 = apply_move(t2, MoveKind::R3, {4, 0, Direction::Remove, 0});
    const cplx v1 = evaluate_link(fixtures::decorated(t1, "sl2", "qsl2", 1));
    const cplx v2 = evaluate_link(fixtures::decorated(t2, "sl2", "qsl2", 2));
    const double dt = std::abs(v1 - v2);
    require(o, dt <= kTrefoilTol, "trefoil presentations differ by " + num(dt));
    const cplx u = evaluate_link(fixtures::decorated("unknot", "sl2", "qsl2"));
    const cplx ul = evaluate_link(fixtures::decorated("unlink", "sl2", "qsl2"));
    const double du = std::abs(ul - u * u);
    require(o, du <= kUnlinkTol, "unlink vs unknot^2 " + num(du));
    if (o.pass)
        o.detail = "trefoil " + num(v1.real()) + (v1.imag() < 0 ? "" : "+") + num(v1.imag()) + "i, presentations " +
                   num(dt) + ", unlink " + num(du);
    return o;
}

Outcome c10_gauge_covariance() {
    Outcome o;
    double scalar_worst = 0.0;
    std::string constant_report;
    for (const std::string name : {"id2", "sigma1", "sigma1_inv", "cross_ud", "cross_du", "cross_dd"}) {
        auto ds = fixtures::decorated(name, "s3", "scalar:0.9,0.4");
        auto dc = fixtures::decorated(name, "s3", "qsl2");
        const auto& G = *ds.coloring.group;
        for (auto side : {GaugeSide::Plus, GaugeSide::Minus})
            for (const auto& x : G.elements()) {
                if (side == GaugeSide::Plus ? !G.in_plus(x) : !G.in_minus(x)) continue;
                auto r = check_gauge_covariance(ds, x, side, kGaugeTol);
                scalar_worst = std::max(scalar_worst, r.best_residual);
                require(o, r.pass, "scalar gauge on " + name);
                auto rc = check_gauge_covariance(dc, x, side, kGaugeTol);
                require(o, rc.pass, "constant gauge on " + name);
                if (name == "sigma1" && !G.equal(x, G.identity()))
                    constant_report += (side == GaugeSide::Plus ? " plus: " : " minus: ") + rc.best;
            }
    }
    double link_worst = 0.0;
    for (const std::string name : {"hopf", "trefoil"}) {
        auto dd = fixtures::decorated(name, "sl2", "gauged-qsl2", 110);
        std::mt19937_64 rng(1010);
        for (int k = 0; k < 50; ++k) {
            auto r = check_gauge_covariance(dd, dd.coloring.group->sample(rng), GaugeSide::Plus, kLinkGaugeTol);
            link_worst = std::max(link_worst, r.link_residual);
        }
    }
    require(o, link_worst <= kLinkGaugeTol, "link scalar moved by " + num(link_worst));
    if (o.pass)
        o.detail = "scalar " + num(scalar_worst) + ", links " + num(link_worst) + ", best readings:" + constant_report;
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"factorization", c1_factorization},
        {"star group", c2_star_group},
        {"dressing", c3_dressing},
        {"coloring and holonomy", c4_coloring_holonomy},
        {"gauge intertwining", c5_gauge_intertwining},
        {"holonomy Yang-Baxter", c6_hybe},
        {"d and w identities", c7_d_w},
        {"functor", c8_functor},
        {"link invariants", c9_links},
        {"gauge covariance", c10_gauge_covariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
