#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "holonomy/coloring.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/io.hpp"
#include "oracles.hpp"

using namespace hol;

namespace {

const auto& S3() { return *symmetric3(); }
Element el(const std::string& n) { return symmetric3()->by_name(n); }
oracle::Perm P(const Element& g) { return oracle::perm(symmetric3()->name_of(g)); }
constexpr auto U = Orientation::Up;
constexpr auto D = Orientation::Down;

// Every valid S3 coloring of d: all bottom colors, component colors and extra cup colors.
std::vector<GColoring> all_s3_colorings(const SlicedDiagram& d) {
    const auto G = symmetric3();
    const auto els = G->elements();
    std::vector<std::size_t> closed;
    for (std::size_t c = 0; c < d.component_count(); ++c)
        if (!d.component_meets_bottom(c)) closed.push_back(c);
    const std::size_t nb = d.bottom().size(), extra = extra_cup_count(d);
    const std::size_t slots = nb + closed.size() + extra;
    std::vector<std::size_t> idx(slots, 0);
    std::vector<GColoring> out;
    while (true) {
        BottomSpec b;
        std::size_t k = 0;
        for (; k < nb; ++k) b.bottom.push_back(els[idx[k]]);
        for (std::size_t c : closed) b.components[c] = els[idx[k++]];
        for (std::size_t e = 0; e < extra; ++e) b.cups.push_back(els[idx[k++]]);
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

// gamma_i = (x_1)_+^{e_1}...(x_i)_+^{e_i} (x_i)_-^{-e_i}...(x_1)_-^{-e_1}, with permutations.
std::vector<oracle::Perm> holonomy_oracle(const std::vector<std::pair<Orientation, std::string>>& line) {
    std::vector<oracle::Perm> out;
    oracle::Perm plus = oracle::perm("e"), minus = oracle::perm("e");
    for (const auto& [o, n] : line) {
        auto f = oracle::s3_factorize(oracle::perm(n));
        plus = oracle::compose(plus, o == U ? f.plus : oracle::inverse(f.plus));
        minus = oracle::compose(o == U ? oracle::inverse(f.minus) : f.minus, minus);
        out.push_back(oracle::compose(plus, minus));
    }
    return out;
}

}  // namespace

TEST_SUITE("coloring") {

TEST_CASE("crossing map against the permutation oracle") {
    const auto& G = S3();
    auto [a, b] = crossing_map(G, el("(12)"), el("(123)"));
    CHECK(G.name_of(a) == "(132)");
    CHECK(G.name_of(b) == "(23)");
    auto [x, y] = crossing_map_inv(G, el("(132)"), el("(23)"));
    CHECK(G.name_of(x) == "(12)");
    CHECK(G.name_of(y) == "(123)");
    for (const auto& g : G.elements())
        for (const auto& h : G.elements()) {
            auto [p, q] = crossing_map(G, g, h);
            auto o = oracle::s3_cross(P(g), P(h));
            CHECK(P(p) == o.first);
            CHECK(P(q) == o.second);
            auto [g2, h2] = crossing_map_inv(G, p, q);
            CHECK(G.equal(g2, g));
            CHECK(G.equal(h2, h));
        }
}

TEST_CASE("crossing with the identity yields a conjugate") {
    const auto& G = S3();
    for (const auto& x : G.elements()) {
        auto [a, b] = crossing_map(G, x, G.identity());
        CHECK(G.equal(a, G.identity()));
        bool conj = false;
        for (const auto& c : G.elements()) conj = conj || G.equal(b, prod(G, {c, x, G.inv(c)}));
        CHECK(conj);
    }
}

TEST_CASE("crossing map round trip on SL2") {
    auto G = make_group("sl2");
    std::mt19937_64 rng(17);
    for (int k = 0; k < 1000; ++k) {
        Element x = G->sample(rng), y = G->sample(rng);
        auto [a, b] = crossing_map(*G, x, y);
        auto [x2, y2] = crossing_map_inv(*G, a, b);
        CHECK(G->distance(x2, x) <= kTauEq);
        CHECK(G->distance(y2, y) <= kTauEq);
    }
}

TEST_CASE("positive braid crossing colors the top by the crossing map") {
    SlicedDiagram d = fixtures::diagram("sigma1");
    for (const auto& x : S3().elements())
        for (const auto& y : S3().elements()) {
            GColoring c = propagate(symmetric3(), d, std::vector<Element>{x, y});
            // x_L = x_- y x_-^{-1}
            Element xm = minus_part(S3(), x);
            CHECK(S3().equal(c.raw(1, 0), prod(S3(), {xm, y, S3().inv(xm)})));
            CHECK(S3().equal(c.raw(1, 1), crossing_map(S3(), x, y).second));
        }
}

TEST_CASE("unknot carries its component color on both edges") {
    SlicedDiagram d = fixtures::diagram("unknot");
    for (const auto& g : S3().elements()) {
        GColoring c = propagate(symmetric3(), d, std::vector<Element>{}, {{0, g}});
        CHECK(S3().equal(c.normalized(1, 0), g));
        CHECK(S3().equal(c.normalized(1, 1), eps_apply(S3(), D, g)));
    }
}

TEST_CASE("positive-cross closed form") {
    // Auxiliary strand x going up at the bottom left of a negative braid crossing.
    const auto& G = S3();
    for (auto e : {U, D}) {
        SlicedDiagram d = SlicedDiagram({U, e}, {{Piece::cross(false, U, e)}});
        for (const auto& x : G.elements())
            for (const auto& y : G.elements()) {
                GColoring c = propagate(symmetric3(), d, std::vector<Element>{x, y});
                const Element xp = plus_part(G, x);
                CHECK(G.equal(c.normalized(1, 0), prod(G, {xp, eps_apply(G, e, y), G.inv(xp)})));
                Element inner = G.mul(power(G, minus_part(G, y), -sign(e)), G.inv(xp));
                CHECK(G.equal(plus_part(G, c.raw(1, 1)), G.inv(plus_part(G, inner))));
            }
    }
}

TEST_CASE("negative-cross closed form") {
    // Same crossing type; the auxiliary strand leaves at the top left with color x.
    const auto& G = S3();
    for (auto e : {U, D}) {
        SlicedDiagram d = SlicedDiagram({e, U}, {{Piece::cross(false, e, U)}});
        for (const auto& y : G.elements())
            for (const auto& b : G.elements()) {
                GColoring c = propagate(symmetric3(), d, std::vector<Element>{y, b});
                const Element x = c.raw(1, 0);
                const Element xm = minus_part(G, x);
                CHECK(G.equal(c.normalized(1, 1), prod(G, {G.inv(xm), eps_apply(G, e, y), xm})));
                Element inner = G.mul(G.inv(xm), power(G, plus_part(G, y), sign(e)));
                CHECK(G.equal(minus_part(G, b), minus_part(G, inner)));
            }
    }
}

TEST_CASE("holonomies of a line against the enumeration oracle") {
    const auto& G = S3();
    ColoredLine line{{U, el("(12)")}, {U, el("(123)")}};
    auto h = cumulative_holonomies(G, line);
    auto o = holonomy_oracle({{U, "(12)"}, {U, "(123)"}});
    REQUIRE(h.size() == 2);
    CHECK(P(h[0]) == o[0]);
    CHECK(P(h[1]) == o[1]);
    CHECK(G.name_of(h[1]) == "(13)");
    CHECK(G.name_of(standard_ramification(G, line)) == "(12)");

    for (const auto& a : G.elements())
        for (const auto& b : G.elements())
            for (auto ea : {U, D})
                for (auto eb : {U, D}) {
                    auto hh = cumulative_holonomies(G, {{ea, a}, {eb, b}});
                    auto oo = holonomy_oracle({{ea, G.name_of(a)}, {eb, G.name_of(b)}});
                    CHECK(P(hh[0]) == oo[0]);
                    CHECK(P(hh[1]) == oo[1]);
                }
}

TEST_CASE("colors and holonomies round trip") {
    const auto& G = S3();
    const auto els = G.elements();
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<std::size_t> idx(n, 0);
        for (bool more = true; more;) {
            for (int mask = 0; mask < (1 << n); ++mask) {
                ColoredLine line;
                Signature eps;
                for (std::size_t k = 0; k < n; ++k) {
                    Orientation o = (mask >> k) & 1 ? D : U;
                    line.emplace_back(o, els[idx[k]]);
                    eps.push_back(o);
                }
                auto back = colors_from_holonomies(G, cumulative_holonomies(G, line), eps);
                for (std::size_t k = 0; k < n; ++k) CHECK(G.equal(back[k], line[k].second));
                ++checked;
            }
            std::size_t i = 0;
            while (i < n && ++idx[i] == els.size()) idx[i++] = 0;
            more = i < n;
        }
    }
    CHECK(checked == 6 * 2 + 36 * 4 + 216 * 8);

    auto S = make_group("sl2");
    std::mt19937_64 rng(23);
    for (int k = 0; k < 1000; ++k) {
        ColoredLine line;
        Signature eps;
        for (int j = 0; j < 3; ++j) {
            Orientation o = rng() % 2 ? U : D;
            line.emplace_back(o, S->sample(rng));
            eps.push_back(o);
        }
        auto back = colors_from_holonomies(*S, cumulative_holonomies(*S, line), eps);
        for (int j = 0; j < 3; ++j) CHECK(S->distance(back[j], line[j].second) <= kTauEq);
    }
}

TEST_CASE("every S3 coloring of the corpus satisfies the Wirtinger relations") {
    for (const auto& name : fixtures::corpus()) {
        CAPTURE(name);
        SlicedDiagram d = fixtures::diagram(name);
        auto colorings = all_s3_colorings(d);
        CHECK(!colorings.empty());
        for (const auto& c : colorings) {
            auto h = holonomies(d, c);
            CHECK(check_wirtinger(S3(), d, h).pass);
        }
    }
}

TEST_CASE("a perturbed holonomy breaks a relation") {
    SlicedDiagram d = fixtures::diagram("braid_s1s2s1");
    GColoring c = propagate(symmetric3(), d, std::vector<Element>{el("(12)"), el("(123)"), el("(23)")});
    auto h = holonomies(d, c);
    REQUIRE(check_wirtinger(S3(), d, h).pass);
    std::size_t failures = 0;
    for (std::size_t e = 0; e < h.size(); ++e) {
        auto bad = h;
        bad[e] = prod(S3(), {el("(12)"), h[e], el("(12)")});
        if (S3().equal(bad[e], h[e])) continue;
        failures += !check_wirtinger(S3(), d, bad).pass;
    }
    CHECK(failures > 0);
}

TEST_CASE("gauge action conjugates holonomies") {
    const auto& G = S3();
    for (const auto& name : fixtures::corpus()) {
        CAPTURE(name);
        SlicedDiagram d = fixtures::diagram(name);
        auto colorings = all_s3_colorings(d);
        for (std::size_t k = 0; k < colorings.size(); k += 7) {
            const auto& c = colorings[k];
            auto h = holonomies(d, c);
            for (const auto& x : G.elements()) {
                GColoring cx = gauge_alpha(x, d, c);
                auto hx = holonomies(d, cx);
                for (std::size_t e = 0; e < h.size(); ++e) CHECK(G.equal(hx[e], prod(G, {x, h[e], G.inv(x)})));
            }
        }
    }
}

TEST_CASE("subgroup gauge closed forms agree with the general action") {
    const auto& G = S3();
    for (const auto& a : G.elements())
        for (const auto& b : G.elements())
            for (auto ea : {U, D})
                for (auto eb : {U, D}) {
                    ColoredLine line{{ea, a}, {eb, b}};
                    for (const auto& x : G.elements()) {
                        auto gen = gauge_alpha_line(G, x, line);
                        if (G.in_plus(x)) {
                            auto cf = gauge_alpha_plus(G, x, line);
                            for (int k = 0; k < 2; ++k) CHECK(G.equal(cf[k].second, gen[k].second));
                        }
                        if (G.in_minus(x)) {
                            auto cf = gauge_alpha_minus(G, x, line);
                            for (int k = 0; k < 2; ++k) CHECK(G.equal(cf[k].second, gen[k].second));
                        }
                    }
                }
    CHECK_THROWS_AS(gauge_alpha_plus(G, el("(12)"), {{U, el("e")}}), SubgroupViolation);
    CHECK_THROWS_AS(gauge_alpha_minus(G, el("(123)"), {{U, el("e")}}), SubgroupViolation);
}

TEST_CASE("free colors: closed components and extra cups") {
    SlicedDiagram tre = fixtures::diagram("trefoil");
    CHECK(extra_cup_count(tre) == 1);
    CHECK_THROWS_AS(propagate(symmetric3(), tre, std::vector<Element>{}, {{0, el("(12)")}}), UnderDetermined);
    CHECK_THROWS_AS(propagate(symmetric3(), fixtures::diagram("unknot"), std::vector<Element>{}), UnderDetermined);

    // A nontrivial trefoil coloring by transpositions, read back through free_colors_of.
    auto all = all_s3_colorings(tre);
    std::size_t nontrivial = 0;
    for (const auto& c : all) {
        auto e = c.by_edge();
        bool varied = false;
        for (const auto& x : e) varied = varied || !S3().equal(x, e.front());
        nontrivial += varied;
        FreeColors f = free_colors_of(tre, c);
        GColoring again = propagate(symmetric3(), tre, std::vector<Element>{}, f.components, 1e-8, f.extra_cups);
        CHECK(again.by_edge().size() == e.size());
        for (std::size_t k = 0; k < e.size(); ++k) CHECK(S3().equal(again.by_edge()[k], e[k]));
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("coloring files: read back and reject tampering") {
    SlicedDiagram d = fixtures::diagram("hopf");
    auto b = read_bottom(read_json_file(fixtures::path("colors/hopf_s3.json")), S3());
    GColoring c = propagate(symmetric3(), d, b);
    GColoring again = read_coloring(c.to_json(), symmetric3(), d);
    CHECK(again.by_edge().size() == c.by_edge().size());
    json bad = c.to_json();
    bad["edges"][3]["color"] = S3().name_of(S3().mul(c.by_edge()[3], el("(12)")));
    CHECK_THROWS_AS(read_coloring(bad, symmetric3(), d), InvalidColoring);
}

}  // TEST_SUITE
