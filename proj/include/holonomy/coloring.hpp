#pragma once

#include <map>
#include <utility>
#include <vector>

#include "holonomy/diagram.hpp"
#include "holonomy/group.hpp"

namespace hol {

using ColoredLine = std::vector<std::pair<Orientation, Element>>;

// Colors x_e of every edge, stored per level (raw colors, not eps-normalized).
struct GColoring {
    GroupPtr group;
    std::vector<Signature> orientations;
    std::vector<std::vector<Element>> levels;

    const Element& raw(std::size_t level, std::size_t pos) const { return levels.at(level).at(pos); }
    Element normalized(std::size_t level, std::size_t pos) const;
    ColoredLine line(std::size_t level) const;
    std::vector<Element> by_edge() const;  // indexed by edge id
    json to_json() const;
};

// Holonomy gamma_e of every edge, indexed by edge id; base point far left.
using HolonomyAssignment = std::vector<Element>;

std::pair<Element, Element> crossing_map(const FactorizableGroup& G, const Element& x, const Element& y);
std::pair<Element, Element> crossing_map_inv(const FactorizableGroup& G, const Element& a, const Element& b);

// component_colors: raw color at the first cup of each component that never meets the bottom boundary.
// tol: cap consistency tolerance for matrix backends.
// extra_cups: raw colors, in row order, for the cups the cap relations leave free beyond those.
GColoring propagate(GroupPtr G, const SlicedDiagram& d, const std::vector<Element>& bottom,
                    const std::map<std::size_t, Element>& component_colors = {}, double tol = 1e-8,
                    const std::vector<Element>& extra_cups = {});
GColoring propagate(GroupPtr G, const SlicedDiagram& d, const ColoredLine& bottom,
                    const std::map<std::size_t, Element>& component_colors = {}, double tol = 1e-8,
                    const std::vector<Element>& extra_cups = {});

// Cups whose color the bottom and the cap relations leave free, in row order. component_color marks the one
// fed from component_colors; the others are fed from extra_cups.
struct FreeCup {
    std::size_t row, slot, component;
    bool component_color;
};
std::vector<FreeCup> free_cups(const SlicedDiagram& d);

// Number of extra_cups entries propagate needs for d.
std::size_t extra_cup_count(const SlicedDiagram& d);

// The free colors of an existing coloring, in the form propagate takes them.
struct FreeColors {
    std::map<std::size_t, Element> components;
    std::vector<Element> extra_cups;
};
FreeColors free_colors_of(const SlicedDiagram& d, const GColoring& c);

Element holonomy_of_edge(const SlicedDiagram& d, const GColoring& c, std::size_t edge);
HolonomyAssignment holonomies(const SlicedDiagram& d, const GColoring& c);

struct RelationCheck {
    std::size_t row, piece;
    std::string relation;
    double deviation;
    bool pass;
};

struct WirtingerReport {
    std::vector<RelationCheck> relations;
    double worst = 0.0;
    bool pass = true;
    json to_json() const;
};

WirtingerReport check_wirtinger(const FactorizableGroup& G, const SlicedDiagram& d, const HolonomyAssignment& h,
                                double tol = kTauEq);

std::vector<Element> cumulative_holonomies(const FactorizableGroup& G, const ColoredLine& colors);
std::vector<Element> colors_from_holonomies(const FactorizableGroup& G, const std::vector<Element>& gammas,
                                            const Signature& eps);

// g = (x_1)_-^{-e_1} ... (x_n)_-^{-e_n}, left to right.
Element standard_ramification(const FactorizableGroup& G, const ColoredLine& colors);

// Gauge action on one horizontal line: holonomies become x-conjugates.
ColoredLine gauge_alpha_line(const FactorizableGroup& G, const Element& x, const ColoredLine& colors);
GColoring gauge_alpha(const Element& x, const SlicedDiagram& d, const GColoring& c);
ColoredLine gauge_alpha_plus(const FactorizableGroup& G, const Element& xp, const ColoredLine& colors);
ColoredLine gauge_alpha_minus(const FactorizableGroup& G, const Element& xm, const ColoredLine& colors);

}  // namespace hol
