#pragma once

#include <limits>

#include <string>
#include <vector>

#include "holonomy/coloring.hpp"
#include "holonomy/diagram.hpp"
#include "holonomy/linear_map.hpp"
#include "holonomy/rmatrix.hpp"

namespace hol {

// A colored diagram with a space per component and an R-matrix system.
struct DecoratedDiagram {
    SlicedDiagram diagram;
    GColoring coloring;
    std::vector<SpaceLabel> spaces;  // indexed by component id
    SystemPtr system;

    // Factors X_i or X_i* of a horizontal level.
    Factors factors(std::size_t level) const;
    const SpaceLabel& space_at(std::size_t level, std::size_t pos) const;
};

// Every component gets `space` (default: the system's first space).
DecoratedDiagram decorate(SlicedDiagram d, GColoring c, SystemPtr sys);
DecoratedDiagram decorate(SlicedDiagram d, GColoring c, SystemPtr sys, const SpaceLabel& space);

// Normalized colors and spaces of the ends of one piece.
struct LocalData {
    std::vector<Element> bottom, top;
    std::vector<SpaceLabel> bottom_spaces, top_spaces;
};

LinearMap elementary_value(const RSystem& sys, const Piece& p, const LocalData& loc);
// Values of all pieces of row r, left to right.
std::vector<LinearMap> row_values(const DecoratedDiagram& dd, std::size_t r);

// 180 degree rotation of an operator S (x) T -> T (x) S.
Matrix rotate180(const Matrix& c, std::size_t nS, std::size_t nT);

enum class Contraction { Serial, Parallel };
LinearMap evaluate(const DecoratedDiagram& dd, Contraction mode = Contraction::Parallel);
cplx evaluate_link(const DecoratedDiagram& dd);

// Colors the moved diagram from the same bottom colors (closed components keep their colors where the
// rows agree) and compares values.
struct MoveCheck {
    std::string move;
    MoveSite site;
    double residual;
    bool pass;
    json to_json() const;
};
MoveCheck check_reidemeister(const DecoratedDiagram& dd, MoveKind move, const MoveSite& site, double tol = 1e-10);
// Coloring of `after` that agrees with `before` on unchanged rows. The common prefix stops at first_changed.
GColoring transport_coloring(const SlicedDiagram& before, const GColoring& c, const SlicedDiagram& after,
                             std::size_t first_changed = std::numeric_limits<std::size_t>::max());

struct FunctorialityReport {
    double compose_residual = 0.0;
    double tensor_residual = 0.0;
    double holonomy_residual = 0.0;  // tensor coloring: right holonomies conjugated by the left line
    bool pass = true;
    json to_json() const;
};
// d1 below d2 for composition; d1 left of d2 for the tensor product.
FunctorialityReport check_functoriality(const DecoratedDiagram& d1, const DecoratedDiagram& d2, double tol = 1e-10);

enum class GaugeSide { Plus, Minus };

struct GaugeReading {
    std::string name;
    double residual;
    bool colors_match;  // chain colors on the bottom strands equal the gauge action
};

struct GaugeReport {
    std::vector<GaugeReading> readings;
    std::string best;
    double best_residual = 0.0;
    bool colors_match = true;  // of the best reading
    bool is_link = false;
    double link_residual = 0.0;
    bool pass = true;
    json to_json() const;
};

// Side Plus: x in G+, auxiliary strand on the left (relation for t^{x+}); side Minus: x in G-, on the right.
GaugeReport check_gauge_covariance(const DecoratedDiagram& dd, const Element& x, GaugeSide side, double tol = 1e-9);

}  // namespace hol
