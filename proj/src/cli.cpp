#include "holonomy/cli.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "holonomy/errors.hpp"
#include "holonomy/functor.hpp"
#include "holonomy/io.hpp"
#include "holonomy/kernels.hpp"

namespace hol {

namespace {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

struct Loaded {
    GroupPtr group;
    SystemPtr system;
    SlicedDiagram diagram;
    GColoring coloring;
};

GColoring load_or_propagate(const JobSpec& spec, const GroupPtr& G, const SlicedDiagram& d, std::mt19937_64& rng) {
    if (!spec.coloring.empty()) return read_coloring(read_json_file(spec.coloring), G, d);
    BottomSpec b = spec.bottom.empty() ? random_bottom(G, d, rng) : read_bottom(read_json_file(spec.bottom), *G);
    if (b.bottom.size() != d.bottom().size())
        throw SignatureMismatch("bottom file has " + std::to_string(b.bottom.size()) + " colors, diagram has " +
                                std::to_string(d.bottom().size()) + " strands");
    return propagate(G, d, b);
}

Loaded load(const JobSpec& spec, std::mt19937_64& rng, bool need_system) {
    if (spec.diagram.empty()) throw InputError(spec.command + " needs --diagram");
    Loaded L;
    L.group = make_group(spec.group);
    if (need_system) L.system = make_system(spec.system, L.group);
    L.diagram = load_diagram(spec.diagram);
    L.coloring = load_or_propagate(spec, L.group, L.diagram, rng);
    return L;
}

json provenance(const JobSpec& spec, const Loaded* L) {
    json p = {{"group", spec.group}, {"seed", spec.seed}};
    if (L) {
        p["diagram_hash"] = diagram_hash(L->diagram);
        p["coloring_hash"] = coloring_hash(L->coloring);
        if (L->system) p["system"] = L->system->id();
    }
    return p;
}

// Grid of group points: every element of a finite group, or seeded samples.
std::vector<Element> grid(const FactorizableGroup& G, std::size_t samples, std::mt19937_64& rng) {
    if (G.is_finite()) return G.elements();
    std::vector<Element> out;
    for (std::size_t k = 0; k < samples; ++k) out.push_back(G.sample(rng));
    return out;
}

JobResult cmd_eval(const JobSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    Loaded L = load(spec, rng, true);
    DecoratedDiagram dd = decorate(L.diagram, L.coloring, L.system);
    LinearMap v = evaluate(dd);
    json rep = {{"command", "eval"}, {"value", v.to_json()}, {"provenance", provenance(spec, &L)}};
    if (v.m.rows() == 1 && v.m.cols() == 1 && L.diagram.bottom().empty() && L.diagram.top().empty())
        rep["scalar"] = cplx_json(v.m(0, 0));
    return {0, rep};
}

JobResult cmd_color(const JobSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    Loaded L = load(spec, rng, false);
    const double tol = spec.tol.value_or(L.group->is_finite() ? 0.0 : 1e-8);
    auto h = holonomies(L.diagram, L.coloring);
    json hj = json::array();
    for (std::size_t e = 0; e < h.size(); ++e) hj.push_back({{"id", e}, {"holonomy", L.group->to_json(h[e])}});
    auto w = check_wirtinger(*L.group, L.diagram, h, tol);
    json rep = {{"command", "color"},
                {"coloring", L.coloring.to_json()},
                {"holonomies", hj},
                {"wirtinger", w.to_json()},
                {"components", L.diagram.component_count()},
                {"provenance", provenance(spec, &L)}};
    return {w.pass ? 0 : 1, rep};
}

JobResult cmd_check_ybe(const JobSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    GroupPtr G = make_group(spec.group);
    SystemPtr S = make_system(spec.system, G);
    const double tol = spec.tol.value_or(1e-10);
    const SpaceLabel X = S->spaces().at(0);
    std::vector<std::array<Element, 3>> triples;
    if (G->is_finite()) {
        auto els = G->elements();
        for (auto& a : els)
            for (auto& b : els)
                for (auto& c : els) triples.push_back({a, b, c});
    } else {
        for (std::size_t k = 0; k < spec.samples; ++k) triples.push_back({G->sample(rng), G->sample(rng), G->sample(rng)});
    }
    auto res = kernels::sweep_parallel(triples.size(), [&](std::size_t k) {
        const auto& t = triples[k];
        return check_hybe(*S, X, X, X, t[0], t[1], t[2], tol).residual;
    });
    json items = json::array();
    std::size_t failures = 0;
    for (std::size_t k = 0; k < triples.size(); ++k) {
        bool ok = res[k] <= tol;
        failures += !ok;
        items.push_back({{"x", G->to_json(triples[k][0])},
                         {"y", G->to_json(triples[k][1])},
                         {"z", G->to_json(triples[k][2])},
                         {"residual", res[k]},
                         {"pass", ok}});
    }
    json rep = {{"command", "check-ybe"},
                {"system", S->id()},
                {"tol", tol},
                {"triples", triples.size()},
                {"failures", failures},
                {"max_residual", kernels::max_of(res)},
                {"items", items},
                {"provenance", provenance(spec, nullptr)}};
    if (auto cs = std::dynamic_pointer_cast<const ConstantSystem>(S)) {
        double r = constant_ybe_residual(cs->r0(), X.dim);
        rep["constant_ybe_residual"] = r;
        failures += r > tol;
    }
    rep["pass"] = failures == 0;
    return {failures == 0 ? 0 : 1, rep};
}

std::vector<std::pair<MoveKind, MoveSite>> candidate_sites(const SlicedDiagram& d) {
    std::vector<std::pair<MoveKind, MoveSite>> out;
    for (std::size_t r = 0; r <= d.row_count(); ++r) {
        const std::size_t width = d.level(r).size();
        for (std::size_t s = 0; s < width; ++s) {
            for (int v = 0; v < 2; ++v) {
                out.push_back({MoveKind::R1Framed, {r, s, Direction::Insert, v}});
                if (s + 1 < width) out.push_back({MoveKind::R2, {r, s, Direction::Insert, v}});
            }
            if (r < d.row_count()) {
                out.push_back({MoveKind::R2, {r, s, Direction::Remove, 0}});
                out.push_back({MoveKind::R3, {r, s, Direction::Remove, 0}});
                out.push_back({MoveKind::R1Framed, {r, s, Direction::Remove, 0}});
            }
        }
        if (r < d.row_count()) out.push_back({MoveKind::Slide, {r, 0, Direction::Remove, 0}});
    }
    return out;
}

JobResult cmd_check_moves(const JobSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    Loaded L = load(spec, rng, true);
    DecoratedDiagram dd = decorate(L.diagram, L.coloring, L.system);
    // 1e-10 holds up to dimension 4; roundoff in the Frobenius residual grows with the matrix size.
    const double dim = static_cast<double>(std::max(
        total_dim(dd.factors(0)), total_dim(dd.factors(L.diagram.levels().size() - 1))));
    const double tol = spec.tol.value_or(1e-10 * std::max(1.0, dim / 4.0));
    std::vector<std::pair<MoveKind, MoveSite>> sites;
    for (auto& cand : candidate_sites(L.diagram)) {
        try {
            apply_move(L.diagram, cand.first, cand.second);
            sites.push_back(cand);
        } catch (const PatternMismatch&) {
        }
    }
    std::vector<MoveCheck> checks(sites.size());
    auto res = kernels::sweep_parallel(sites.size(), [&](std::size_t k) {
        checks[k] = check_reidemeister(dd, sites[k].first, sites[k].second, tol);
        return checks[k].residual;
    });
    json items = json::array();
    json failing = json::array();
    for (const auto& c : checks) {
        items.push_back(c.to_json());
        if (!c.pass) failing.push_back(c.move + "@" + std::to_string(c.site.row) + ":" + std::to_string(c.site.strand));
    }
    json rep = {{"command", "check-moves"},
                {"tol", tol},
                {"checked", checks.size()},
                {"max_residual", kernels::max_of(res)},
                {"failing", failing},
                {"items", items},
                {"pass", failing.empty()},
                {"provenance", provenance(spec, &L)}};
    return {failing.empty() ? 0 : 1, rep};
}

JobResult cmd_check_gauge(const JobSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    Loaded L = load(spec, rng, true);
    if (spec.side != "plus" && spec.side != "minus") throw InputError("--side must be plus or minus");
    const double tol = spec.tol.value_or(1e-9);
    const bool plus = spec.side == "plus";
    Element x;
    if (!spec.gauge_element.empty()) {
        x = element_from_text(*L.group, spec.gauge_element);
    } else if (L.group->is_finite()) {
        // Uniform over the non-identity elements of the side's subgroup.
        std::vector<Element> pool;
        for (const auto& g : L.group->elements())
            if ((plus ? L.group->in_plus(g) : L.group->in_minus(g)) && !L.group->equal(g, L.group->identity()))
                pool.push_back(g);
        x = pool.empty() ? L.group->identity()
                         : pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    } else {
        const Element g = L.group->sample(rng);
        x = plus ? plus_part(*L.group, g) : minus_part(*L.group, g);
    }
    DecoratedDiagram dd = decorate(L.diagram, L.coloring, L.system);
    auto g = check_gauge_covariance(dd, x, plus ? GaugeSide::Plus : GaugeSide::Minus, tol);
    json rep = {{"command", "check-gauge"},
                {"side", spec.side},
                {"gauge_element", L.group->to_json(x)},
                {"tol", tol},
                {"result", g.to_json()},
                {"pass", g.pass},
                {"provenance", provenance(spec, &L)}};
    return {g.pass ? 0 : 1, rep};
}

JobResult cmd_check_identities(const JobSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    GroupPtr G = make_group(spec.group);
    SystemPtr S = make_system(spec.system, G);
    const double tol = spec.tol.value_or(1e-9);
    const SpaceLabel X = S->spaces().at(0);
    auto pts = grid(*G, spec.samples, rng);
    std::vector<std::pair<Element, Element>> pairs;
    if (G->is_finite()) {
        for (auto& a : pts)
            for (auto& b : pts) pairs.push_back({a, b});
    } else {
        for (std::size_t k = 0; k + 1 < pts.size(); k += 2) pairs.push_back({pts[k], pts[k + 1]});
        if (pts.size() == 1) pairs.push_back({pts[0], G->identity()});
    }
    std::vector<IdentityReport> reports(pairs.size());
    std::vector<NondegeneracyReport> nondeg(pairs.size());
    kernels::sweep_parallel(pairs.size(), [&](std::size_t k) {
        reports[k] = check_identities(*S, X, X, pairs[k].first, pairs[k].second, tol);
        nondeg[k] = check_cross_nondegenerate(S->r_map(X, X, pairs[k].first, pairs[k].second));
        return 0.0;
    });
    // Worst residual per (identity, reading).
    std::vector<IdentityResidual> worst;
    bool pass = true, nondegenerate = true;
    for (std::size_t k = 0; k < reports.size(); ++k) {
        pass = pass && reports[k].pass;
        nondegenerate = nondegenerate && nondeg[k].nondegenerate;
        for (const auto& it : reports[k].items) {
            auto w = std::find_if(worst.begin(), worst.end(),
                                  [&](const IdentityResidual& o) { return o.name == it.name && o.reading == it.reading; });
            if (w == worst.end())
                worst.push_back(it);
            else if (!(it.residual <= w->residual))
                *w = it;
        }
    }
    json items = json::array();
    for (auto& w : worst)
        items.push_back({{"identity", w.name},
                         {"reading", w.reading},
                         {"asserted", w.asserted},
                         {"max_residual", w.residual},
                         {"pass", w.residual <= tol}});
    json rep = {{"command", "check-identities"},
                {"system", S->id()},
                {"tol", tol},
                {"pairs", pairs.size()},
                {"cross_nondegenerate", nondegenerate},
                {"identities", items},
                {"pass", pass && nondegenerate},
                {"provenance", provenance(spec, nullptr)}};
    return {pass && nondegenerate ? 0 : 1, rep};
}

}  // namespace

JobResult run(const JobSpec& spec) {
    try {
        if (spec.command == "eval") return cmd_eval(spec);
        if (spec.command == "color") return cmd_color(spec);
        if (spec.command == "check-ybe") return cmd_check_ybe(spec);
        if (spec.command == "check-moves") return cmd_check_moves(spec);
        if (spec.command == "check-gauge") return cmd_check_gauge(spec);
        if (spec.command == "check-identities") return cmd_check_identities(spec);
        throw InputError("unknown command '" + spec.command + "'");
    } catch (const Error& e) {
        // A singular or inconsistent operator met while checking is a failed check; the rest are bad input.
        const bool failed_check = e.kind() == "SingularR" || e.kind() == "InconsistentDressing";
        return {failed_check ? 1 : 2, {{"command", spec.command}, {"error", e.kind()}, {"message", e.what()}}};
    }
}

}  // namespace hol
