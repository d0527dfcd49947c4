#include <optional>

#include "holonomy/diagram.hpp"
#include "holonomy/errors.hpp"

namespace hol {

namespace {

// The single non-Id piece of a row and its bottom slot, if the row has exactly one.
std::optional<std::pair<Piece, std::size_t>> lone_piece(const SlicedDiagram& d, std::size_t r) {
    std::optional<std::pair<Piece, std::size_t>> found;
    auto off = d.offsets(r);
    for (std::size_t i = 0; i < d.rows()[r].size(); ++i) {
        const auto& p = d.rows()[r][i];
        if (p.kind == PieceKind::Id) continue;
        if (found) return std::nullopt;
        found = std::make_pair(p, off[i]);
    }
    return found;
}

// Row on signature `sig` with `piece` at bottom slot `at` and Id elsewhere.
Row make_row(const Signature& sig, const Piece& piece, std::size_t at) {
    Row row;
    for (std::size_t k = 0; k < at; ++k) row.push_back(Piece::id(sig[k]));
    Piece p = piece;
    if (p.is_crossing()) {
        p.o1 = sig.at(at);
        p.o2 = sig.at(at + 1);
    }
    row.push_back(p);
    for (std::size_t k = at + piece.bottom_count(); k < sig.size(); ++k) row.push_back(Piece::id(sig[k]));
    return row;
}

Signature apply_row(const Row& row) {
    Signature top;
    for (const auto& p : row) {
        auto t = p.top();
        top.insert(top.end(), t.begin(), t.end());
    }
    return top;
}

PatternMismatch mismatch(MoveKind m, const MoveSite& s, const std::string& why) {
    return PatternMismatch(to_string(m) + " at row " + std::to_string(s.row) + ", strand " +
                           std::to_string(s.strand) + ": " + why);
}

// Rows of a curl on a strand of orientation o at slot s. right: the loop sits to the right of the strand.
std::vector<Row> curl_rows(Signature sig, std::size_t s, bool right, bool positive) {
    const Orientation o = sig[s];
    std::vector<Row> rows;
    auto push = [&](const Piece& p, std::size_t at) {
        rows.push_back(make_row(sig, p, at));
        sig = apply_row(rows.back());
    };
    if (right) {
        // |o U(o,~o) -> X on (s, s+1) -> |o A(o,~o) at (s+1, s+2)
        Row r0;
        for (std::size_t k = 0; k <= s; ++k) r0.push_back(Piece::id(sig[k]));
        r0.push_back(Piece::cup(o));
        for (std::size_t k = s + 1; k < sig.size(); ++k) r0.push_back(Piece::id(sig[k]));
        rows.push_back(r0);
        sig = apply_row(r0);
        push(Piece::cross(positive, o, o), s);
        push(Piece::cap(o), s + 1);
    } else {
        // U(~o,o) |o -> X on (s+1, s+2) -> A(~o,o) at (s, s+1)
        Row r0;
        for (std::size_t k = 0; k < s; ++k) r0.push_back(Piece::id(sig[k]));
        r0.push_back(Piece::cup(flip(o)));
        for (std::size_t k = s; k < sig.size(); ++k) r0.push_back(Piece::id(sig[k]));
        rows.push_back(r0);
        sig = apply_row(r0);
        push(Piece::cross(positive, o, o), s + 1);
        push(Piece::cap(flip(o)), s);
    }
    return rows;
}

std::vector<Row> whitney_pair(const Signature& sig, std::size_t s, int variant) {
    bool right_positive = variant == 0;
    auto a = curl_rows(sig, s, true, right_positive);
    auto b = curl_rows(sig, s, false, !right_positive);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

SlicedDiagram splice(const SlicedDiagram& d, std::size_t from, std::size_t count, const std::vector<Row>& repl) {
    std::vector<Row> rows(d.rows().begin(), d.rows().begin() + static_cast<std::ptrdiff_t>(from));
    rows.insert(rows.end(), repl.begin(), repl.end());
    rows.insert(rows.end(), d.rows().begin() + static_cast<std::ptrdiff_t>(from + count), d.rows().end());
    return SlicedDiagram(d.bottom(), rows);
}

bool rows_equal(const SlicedDiagram& d, std::size_t from, const std::vector<Row>& pattern) {
    if (from + pattern.size() > d.row_count()) return false;
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (!(d.rows()[from + i] == pattern[i])) return false;
    return true;
}

}  // namespace

std::string to_string(MoveKind m) {
    switch (m) {
        case MoveKind::R1Framed: return "R1framed";
        case MoveKind::R2: return "R2";
        case MoveKind::R3: return "R3";
        case MoveKind::Slide: return "slide";
    }
    return "?";
}

MoveKind move_from_string(const std::string& s) {
    if (s == "R1framed") return MoveKind::R1Framed;
    if (s == "R2") return MoveKind::R2;
    if (s == "R3") return MoveKind::R3;
    if (s == "slide") return MoveKind::Slide;
    throw InputError("unknown move '" + s + "'");
}

SlicedDiagram apply_move(const SlicedDiagram& d, MoveKind move, const MoveSite& site) {
    const std::size_t r = site.row, s = site.strand;
    switch (move) {
        case MoveKind::R2: {
            if (site.direction == Direction::Insert) {
                if (r > d.row_count()) throw mismatch(move, site, "row out of range");
                const Signature& sig = d.level(r);
                if (s + 1 >= sig.size()) throw mismatch(move, site, "needs two strands");
                bool first = site.variant == 0;
                Row a = make_row(sig, Piece::cross(first, sig[s], sig[s + 1]), s);
                Row b = make_row(apply_row(a), Piece::cross(!first), s);
                return splice(d, r, 0, {a, b});
            }
            if (r + 1 >= d.row_count()) throw mismatch(move, site, "needs two rows");
            auto p = lone_piece(d, r), q = lone_piece(d, r + 1);
            if (!p || !q || !p->first.is_crossing() || !q->first.is_crossing() || p->second != s || q->second != s ||
                p->first.kind == q->first.kind)
                throw mismatch(move, site, "expected two opposite crossings on the same strands");
            return splice(d, r, 2, {});
        }
        case MoveKind::R3: {
            if (r + 2 >= d.row_count()) throw mismatch(move, site, "needs three rows");
            auto a = lone_piece(d, r), b = lone_piece(d, r + 1), c = lone_piece(d, r + 2);
            if (!a || !b || !c || !a->first.is_crossing() || !b->first.is_crossing() || !c->first.is_crossing())
                throw mismatch(move, site, "expected three single-crossing rows");
            std::size_t p0 = a->second, p1 = b->second, p2 = c->second;
            bool low_first = p0 == s && p1 == s + 1 && p2 == s;
            bool high_first = p0 == s + 1 && p1 == s && p2 == s + 1;
            if (!low_first && !high_first) throw mismatch(move, site, "crossings are not in braid-relation position");
            auto ka = a->first.kind, kb = b->first.kind, kc = c->first.kind;
            if (ka == kc && ka != kb) throw mismatch(move, site, "sign pattern is not a braid relation");
            std::size_t q0 = low_first ? s + 1 : s, q1 = low_first ? s : s + 1;
            Signature sig = d.level(r);
            Row r0 = make_row(sig, Piece::cross(kc == PieceKind::PosCross), q0);
            sig = apply_row(r0);
            Row r1 = make_row(sig, Piece::cross(kb == PieceKind::PosCross), q1);
            sig = apply_row(r1);
            Row r2 = make_row(sig, Piece::cross(ka == PieceKind::PosCross), q0);
            return splice(d, r, 3, {r0, r1, r2});
        }
        case MoveKind::Slide: {
            if (r + 1 >= d.row_count()) throw mismatch(move, site, "needs two rows");
            auto p = lone_piece(d, r), q = lone_piece(d, r + 1);
            if (!p || !q) throw mismatch(move, site, "each row must hold exactly one non-identity piece");
            const auto& [P, at_p] = *p;
            const auto& [Q, at_q] = *q;
            const std::size_t pb = P.bottom_count(), pt = P.top_count(), qb = Q.bottom_count(), qt = Q.top_count();
            Signature sig = d.level(r);
            std::size_t new_q, new_p;
            if (at_q + qb <= at_p) {
                new_q = at_q;
                new_p = at_p + qt - qb;
            } else if (at_q >= at_p + pt) {
                new_q = at_q - pt + pb;
                new_p = at_p;
            } else {
                throw mismatch(move, site, "pieces overlap");
            }
            Row r0 = make_row(sig, Q, new_q);
            Row r1 = make_row(apply_row(r0), P, new_p);
            return splice(d, r, 2, {r0, r1});
        }
        case MoveKind::R1Framed: {
            if (site.direction == Direction::Insert) {
                if (r > d.row_count()) throw mismatch(move, site, "row out of range");
                const Signature& sig = d.level(r);
                if (s >= sig.size()) throw mismatch(move, site, "no such strand");
                return splice(d, r, 0, whitney_pair(sig, s, site.variant));
            }
            if (r >= d.row_count() || s >= d.level(r).size()) throw mismatch(move, site, "site out of range");
            for (int v = 0; v < 2; ++v) {
                auto pattern = whitney_pair(d.level(r), s, v);
                if (rows_equal(d, r, pattern)) return splice(d, r, pattern.size(), {});
            }
            throw mismatch(move, site, "no canceling curl pair here");
        }
    }
    throw mismatch(move, site, "unknown move");
}

}  // namespace hol
