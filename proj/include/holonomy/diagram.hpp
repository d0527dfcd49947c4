#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "holonomy/group.hpp"

namespace hol {

enum class PieceKind { Id, PosCross, NegCross, Cup, Cap };

// Orientations: Id uses o1 only. Cup/Cap: the two ends, left to right.
// Crossings: bottom orientations (filled in during validation).
struct Piece {
    PieceKind kind = PieceKind::Id;
    Orientation o1 = Orientation::Up;
    Orientation o2 = Orientation::Up;

    std::size_t bottom_count() const;
    std::size_t top_count() const;
    std::vector<Orientation> bottom() const;
    std::vector<Orientation> top() const;
    bool is_crossing() const { return kind == PieceKind::PosCross || kind == PieceKind::NegCross; }
    // Oriented sign of a crossing (+1 for X+ with parallel strands); 0 otherwise.
    int crossing_sign() const;

    static Piece id(Orientation o) { return {PieceKind::Id, o, o}; }
    static Piece cross(bool positive, Orientation b1 = Orientation::Up, Orientation b2 = Orientation::Up) {
        return {positive ? PieceKind::PosCross : PieceKind::NegCross, b1, b2};
    }
    static Piece cup(Orientation l) { return {PieceKind::Cup, l, flip(l)}; }
    static Piece cap(Orientation l) { return {PieceKind::Cap, l, flip(l)}; }

    bool operator==(const Piece&) const = default;
};

using Row = std::vector<Piece>;
using Signature = std::vector<Orientation>;

struct EdgeInfo {
    std::size_t id, level, position;
    Orientation orientation;
    std::size_t component;
};

// Morse-position diagram: rows of elementary pieces, bottom row first.
class SlicedDiagram {
public:
    SlicedDiagram() = default;
    // Throws SignatureMismatch when adjacent rows disagree.
    SlicedDiagram(Signature bottom, std::vector<Row> rows);

    static SlicedDiagram identity(const Signature& sig);

    const std::vector<Row>& rows() const { return rows_; }
    const Signature& level(std::size_t k) const { return levels_.at(k); }
    const std::vector<Signature>& levels() const { return levels_; }
    const Signature& bottom() const { return levels_.front(); }
    const Signature& top() const { return levels_.back(); }
    std::size_t row_count() const { return rows_.size(); }

    std::size_t edge_count() const { return edges_.size(); }
    std::size_t edge_id(std::size_t level, std::size_t position) const;
    const std::vector<EdgeInfo>& edges() const { return edges_; }
    std::size_t component_count() const { return component_count_; }
    std::size_t component_of(std::size_t level, std::size_t position) const;
    bool component_meets_bottom(std::size_t c) const;
    // Writhe of self-crossings per component (blackboard framing).
    const std::vector<int>& framing() const { return framing_; }
    std::size_t crossing_count() const;

    // Bottom slot offset of every piece of row r.
    std::vector<std::size_t> offsets(std::size_t r) const;

    json to_json() const;

    bool operator==(const SlicedDiagram& o) const { return levels_.front() == o.levels_.front() && rows_ == o.rows_; }

private:
    std::vector<Row> rows_;
    std::vector<Signature> levels_{Signature{}};
    std::vector<std::size_t> level_offset_{0};
    std::vector<EdgeInfo> edges_;
    std::size_t component_count_ = 0;
    std::vector<int> framing_;
    std::vector<bool> meets_bottom_;
};

enum class Boundary { Bottom, Top };
Signature boundary_signature(const SlicedDiagram& d, Boundary which);

// DSL: one row per line, bottom row first. Tokens |u |d X+ X- X+(ud) U(ud) U(du) A(ud) A(du), "." for an
// empty row. An optional first line "@bottom u d ..." fixes the bottom signature; otherwise it is inferred.
SlicedDiagram parse(const std::string& text);
std::string render(const SlicedDiagram& d);
std::string to_string(const Piece& p, bool with_letters = false);
SlicedDiagram load_diagram(const std::string& path);

SlicedDiagram compose(const SlicedDiagram& lower, const SlicedDiagram& upper);
SlicedDiagram tensor(const SlicedDiagram& left, const SlicedDiagram& right);

enum class MoveKind { R1Framed, R2, R3, Slide };
enum class Direction { Insert, Remove };

// row: first row of the pattern (insert: the level where new rows go); strand: leftmost slot involved.
// variant picks the crossing signs for insertions (0: X+ first / right curl positive, 1: the opposite).
struct MoveSite {
    std::size_t row = 0;
    std::size_t strand = 0;
    Direction direction = Direction::Remove;
    int variant = 0;
};

SlicedDiagram apply_move(const SlicedDiagram& d, MoveKind move, const MoveSite& site);
std::string to_string(MoveKind m);
MoveKind move_from_string(const std::string& s);

}  // namespace hol
