#include "holonomy/functor.hpp"

#include <algorithm>

#include "holonomy/errors.hpp"
#include "holonomy/kernels.hpp"

namespace hol {

Factors DecoratedDiagram::factors(std::size_t level) const {
    Factors f;
    const auto& sig = diagram.level(level);
    for (std::size_t k = 0; k < sig.size(); ++k) f.push_back({space_at(level, k), sig[k] == Orientation::Down});
    return f;
}

const SpaceLabel& DecoratedDiagram::space_at(std::size_t level, std::size_t pos) const {
    return spaces.at(diagram.component_of(level, pos));
}

DecoratedDiagram decorate(SlicedDiagram d, GColoring c, SystemPtr sys, const SpaceLabel& space) {
    if (c.levels.size() != d.levels().size()) throw InvalidColoring("coloring does not cover the diagram");
    for (std::size_t l = 0; l < c.levels.size(); ++l)
        if (c.levels[l].size() != d.level(l).size()) throw InvalidColoring("coloring does not cover the diagram");
    std::vector<SpaceLabel> spaces(d.component_count(), space);
    return {std::move(d), std::move(c), std::move(spaces), std::move(sys)};
}

DecoratedDiagram decorate(SlicedDiagram d, GColoring c, SystemPtr sys) {
    auto space = sys->spaces().at(0);
    return decorate(std::move(d), std::move(c), std::move(sys), space);
}

Matrix rotate180(const Matrix& c, std::size_t nS, std::size_t nT) {
    const auto N = static_cast<Eigen::Index>(nS * nT);
    if (c.rows() != N || c.cols() != N) throw ShapeMismatch("rotate180 needs a square two-factor operator");
    Matrix r(N, N);
    for (std::size_t y = 0; y < nT; ++y)
        for (std::size_t x = 0; x < nS; ++x)
            for (std::size_t a = 0; a < nS; ++a)
                for (std::size_t b = 0; b < nT; ++b) r(y * nS + x, a * nT + b) = c(b * nS + a, x * nT + y);
    return r;
}

namespace {

Matrix vec(const Matrix& m) {
    Matrix v(m.rows() * m.cols(), 1);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
    return v;
}

Matrix crossing_matrix(const RSystem& sys, const Piece& p, const LocalData& loc) {
    const FactorizableGroup& G = sys.group();
    const SpaceLabel& A = loc.bottom_spaces.at(0);
    const SpaceLabel& B = loc.bottom_spaces.at(1);
    const std::size_t nA = A.dim, nB = B.dim;
    const Element& x = loc.bottom.at(0);
    const Element& y = loc.bottom.at(1);
    const bool pos = p.kind == PieceKind::PosCross;
    auto inv = [](const Matrix& m) { return guarded_inverse(m, "crossing operand"); };
    auto i = [&](const Element& g) { return star_inv(G, g); };
    const Matrix PAB = swap_matrix(nA, nB), PBA = swap_matrix(nB, nA);
    const bool upA = p.o1 == Orientation::Up, upB = p.o2 == Orientation::Up;

    if (upA && upB) {
        if (pos) return PAB * sys.r(A, B, x, y);
        auto [s, t] = crossing_map_inv(G, x, y);
        return inv(PBA * sys.r(B, A, s, t));
    }
    if (upA && !upB) {
        if (pos) {
            Element q = crossing_map(G, x, y).second;
            return PAB * partial_transpose(inv(sys.r(A, B, q, i(y))), 2, nA, nB);
        }
        Element s = crossing_map_inv(G, x, y).first;
        return partial_transpose(sys.r(B, A, i(s), x), 1, nB, nA) * PAB;
    }
    if (!upA && upB) {
        if (pos) {
            Element s = crossing_map(G, x, y).first;
            return PAB * inv(partial_transpose(sys.r(A, B, i(x), s), 1, nA, nB));
        }
        Element t = crossing_map_inv(G, x, y).second;
        return inv(partial_transpose(inv(sys.r(B, A, y, i(t))), 2, nB, nA)) * PAB;
    }
    // Both strands down: rotated upward crossings.
    if (pos) {
        auto [u, v] = crossing_map_inv(G, i(y), i(x));
        return rotate180(PAB * sys.r(A, B, u, v), nA, nB);
    }
    return rotate180(inv(PBA * sys.r(B, A, i(y), i(x))), nA, nB);
}

}  // namespace

LinearMap elementary_value(const RSystem& sys, const Piece& p, const LocalData& loc) {
    auto fac = [](const SpaceLabel& s, Orientation o) { return Factor{s, o == Orientation::Down}; };
    switch (p.kind) {
        case PieceKind::Id: {
            const auto& S = loc.bottom_spaces.at(0);
            return LinearMap::identity({fac(S, p.o1)});
        }
        case PieceKind::Cup: {
            const auto& S = loc.top_spaces.at(0);
            const auto n = static_cast<Eigen::Index>(S.dim);
            Matrix m = p.o1 == Orientation::Up ? vec(guarded_inverse(d_op(sys, S, loc.top.at(0)).m, "d"))
                                               : vec(Matrix::Identity(n, n));
            return LinearMap(m, {}, {fac(S, p.o1), fac(S, p.o2)});
        }
        case PieceKind::Cap: {
            const auto& S = loc.bottom_spaces.at(0);
            const auto n = static_cast<Eigen::Index>(S.dim);
            Matrix m = p.o1 == Orientation::Down ? vec(d_op(sys, S, loc.bottom.at(1)).m).transpose().eval()
                                                 : vec(Matrix::Identity(n, n)).transpose().eval();
            return LinearMap(m, {fac(S, p.o1), fac(S, p.o2)}, {});
        }
        case PieceKind::PosCross:
        case PieceKind::NegCross: {
            const auto& A = loc.bottom_spaces.at(0);
            const auto& B = loc.bottom_spaces.at(1);
            return LinearMap(crossing_matrix(sys, p, loc), {fac(A, p.o1), fac(B, p.o2)},
                             {fac(B, p.o2), fac(A, p.o1)});
        }
    }
    throw InputError("unknown piece kind");
}

std::vector<LinearMap> row_values(const DecoratedDiagram& dd, std::size_t r) {
    const auto& row = dd.diagram.rows().at(r);
    const auto& sys = *dd.system;
    std::vector<LinearMap> out;
    std::size_t b = 0, t = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
        const Piece& p = row[k];
        LocalData loc;
        for (std::size_t j = 0; j < p.bottom_count(); ++j) {
            loc.bottom.push_back(dd.coloring.normalized(r, b + j));
            loc.bottom_spaces.push_back(dd.space_at(r, b + j));
        }
        for (std::size_t j = 0; j < p.top_count(); ++j) {
            loc.top.push_back(dd.coloring.normalized(r + 1, t + j));
            loc.top_spaces.push_back(dd.space_at(r + 1, t + j));
        }
        try {
            out.push_back(elementary_value(sys, p, loc));
        } catch (const SingularR& e) {
            throw SingularR(std::string(e.what()) + " (row " + std::to_string(r) + ", piece " + std::to_string(k) + ")");
        }
        b += p.bottom_count();
        t += p.top_count();
    }
    return out;
}

LinearMap evaluate(const DecoratedDiagram& dd, Contraction mode) {
    const Factors dom = dd.factors(0);
    const auto n = static_cast<Eigen::Index>(total_dim(dom));
    Matrix state = Matrix::Identity(n, n);
    for (std::size_t r = 0; r < dd.diagram.row_count(); ++r) {
        std::vector<Matrix> ops;
        for (auto& v : row_values(dd, r)) ops.push_back(std::move(v.m));
        state = mode == Contraction::Serial ? kernels::apply_row_serial(ops, state)
                                            : kernels::apply_row_parallel(ops, state);
    }
    return LinearMap(state, dom, dd.factors(dd.diagram.levels().size() - 1));
}

cplx evaluate_link(const DecoratedDiagram& dd) {
    if (!dd.diagram.bottom().empty() || !dd.diagram.top().empty())
        throw NonEmptyBoundary("link evaluation needs empty top and bottom boundaries");
    return evaluate(dd).m(0, 0);
}

GColoring transport_coloring(const SlicedDiagram& before, const GColoring& c, const SlicedDiagram& after,
                             std::size_t first_changed) {
    if (before.bottom() != after.bottom()) throw SignatureMismatch("moved diagram changed the bottom signature");
    const std::size_t nb = before.row_count(), na = after.row_count();
    std::size_t pre = 0;
    while (pre < std::min({nb, na, first_changed}) && before.rows()[pre] == after.rows()[pre]) ++pre;
    std::size_t suf = 0;
    while (pre + suf < std::min(nb, na) && before.rows()[nb - 1 - suf] == after.rows()[na - 1 - suf]) ++suf;

    FreeColors free;
    for (const auto& cup : free_cups(after)) {
        std::size_t rb;
        if (cup.row < pre)
            rb = cup.row;
        else if (cup.row >= na - suf)
            rb = cup.row - na + nb;
        else
            throw UnderDetermined("free cup at row " + std::to_string(cup.row) + " lies inside the rewritten rows");
        const Element& raw = c.raw(rb + 1, cup.slot);
        if (cup.component_color) free.components[cup.component] = raw;
        else free.extra_cups.push_back(raw);
    }
    return propagate(c.group, after, c.levels.at(0), free.components, 1e-8, free.extra_cups);
}

json MoveCheck::to_json() const {
    return {{"move", move},
            {"row", site.row},
            {"strand", site.strand},
            {"direction", site.direction == Direction::Insert ? "insert" : "remove"},
            {"variant", site.variant},
            {"residual", residual},
            {"pass", pass}};
}

MoveCheck check_reidemeister(const DecoratedDiagram& dd, MoveKind move, const MoveSite& site, double tol) {
    SlicedDiagram after = apply_move(dd.diagram, move, site);
    GColoring c2 = transport_coloring(dd.diagram, dd.coloring, after, site.row);
    DecoratedDiagram dd2 = decorate(after, c2, dd.system, dd.spaces.empty() ? dd.system->spaces().at(0) : dd.spaces[0]);
    LinearMap v1 = evaluate(dd), v2 = evaluate(dd2);
    double res = frobenius(v1.m - v2.m);
    return {to_string(move), site, res, res <= tol};
}

json FunctorialityReport::to_json() const {
    return {{"compose_residual", compose_residual},
            {"tensor_residual", tensor_residual},
            {"holonomy_residual", holonomy_residual},
            {"pass", pass}};
}

FunctorialityReport check_functoriality(const DecoratedDiagram& d1, const DecoratedDiagram& d2, double tol) {
    FunctorialityReport rep;
    const FactorizableGroup& G = *d1.coloring.group;
    const SpaceLabel space = d1.spaces.empty() ? d1.system->spaces().at(0) : d1.spaces[0];
    const LinearMap f1 = evaluate(d1), f2 = evaluate(d2);

    // Composition, defined when the colored boundaries agree.
    const auto& top1 = d1.coloring.levels.back();
    const auto& bot2 = d2.coloring.levels.front();
    bool composable = d1.diagram.top() == d2.diagram.bottom() && top1.size() == bot2.size();
    for (std::size_t k = 0; composable && k < top1.size(); ++k) composable = G.equal(top1[k], bot2[k]);
    if (composable) {
        SlicedDiagram dc = compose(d1.diagram, d2.diagram);
        GColoring cc = d1.coloring;
        cc.orientations = dc.levels();
        cc.levels.insert(cc.levels.end(), d2.coloring.levels.begin() + 1, d2.coloring.levels.end());
        LinearMap fc = evaluate(decorate(dc, cc, d1.system, space));
        rep.compose_residual = frobenius(fc.m - f2.m * f1.m);
    }

    // Tensor product: colors juxtaposed, the shorter diagram padded with its top line.
    SlicedDiagram dt = tensor(d1.diagram, d2.diagram);
    GColoring ct;
    ct.group = d1.coloring.group;
    ct.orientations = dt.levels();
    const std::size_t n1 = d1.diagram.row_count(), n2 = d2.diagram.row_count();
    for (std::size_t l = 0; l < dt.levels().size(); ++l) {
        auto line = d1.coloring.levels[std::min(l, n1)];
        const auto& right = d2.coloring.levels[std::min(l, n2)];
        line.insert(line.end(), right.begin(), right.end());
        ct.levels.push_back(std::move(line));
    }
    LinearMap ft = evaluate(decorate(dt, ct, d1.system, space));
    rep.tensor_residual = frobenius(ft.m - kron(f1.m, f2.m));

    // Holonomies of the right factor are conjugated by C = prod (x_j)_-^{e_j} over the left line.
    auto h2 = holonomies(d2.diagram, d2.coloring);
    auto ht = holonomies(dt, ct);
    for (std::size_t l = 0; l < dt.levels().size(); ++l) {
        const auto left = d1.coloring.line(std::min(l, n1));
        Element C = G.identity();
        for (const auto& [o, g] : left) C = G.mul(C, power(G, minus_part(G, g), sign(o)));
        const std::size_t l2 = std::min(l, n2);
        for (std::size_t k = 0; k < d2.coloring.levels[l2].size(); ++k) {
            Element expect = prod(G, {C, h2[d2.diagram.edge_id(l2, k)], G.inv(C)});
            const Element& got = ht[dt.edge_id(l, left.size() + k)];
            rep.holonomy_residual = std::max(rep.holonomy_residual, G.distance(expect, got));
        }
    }
    rep.pass = rep.compose_residual <= tol && rep.tensor_residual <= tol && rep.holonomy_residual <= tol;
    return rep;
}

}  // namespace hol
