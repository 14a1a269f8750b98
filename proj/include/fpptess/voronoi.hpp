#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpptess/geometry2d.hpp"
#include "fpptess/rng.hpp"

namespace fpptess {

// One Voronoi cell. Cells whose Delaunay fan touches the enclosing helper
// triangle are incomplete (hull cells far outside the safe window);
// `touches_margin` additionally flags complete cells reaching beyond R_safe.
// Only cells with touches_margin == false are guaranteed geometrically exact.
struct VoronoiCell {
    Pt generator;
    Polygon poly;      // counterclockwise, canonical rotation; empty if incomplete
    bool complete = false;
    bool touches_margin = true;
    double area = 0;
    double perimeter = 0;
    std::vector<int> neighbors;  // adjacent cell ids, ascending
};

// Shared boundary between two adjacent cells; `trusted` when both flanking
// Delaunay triangles avoid the helper vertices (the segment is then the
// true Voronoi edge).
struct VoronoiFace {
    int a = -1, b = -1;  // cell ids, a < b
    Pt p, q;
    bool trusted = false;
};

// Poisson-Voronoi tessellation on a disk window: generators are a Poisson
// process of intensity lambda on the disk of radius R_gen; every cell
// intersecting the safe disk of radius R_safe is fully determined provided
// the margin R_gen - R_safe >= 5 / sqrt(lambda).
struct Tessellation2D {
    double lambda = 0;
    double R_gen = 0;
    double R_safe = 0;
    std::uint64_t seed = 0;
    std::vector<VoronoiCell> cells;
    std::vector<VoronoiFace> faces;

    // nearest-generator bucket grid for cell_at
    double grid_h = 1;
    int grid_n = 1;
    std::vector<std::vector<int>> grid;
};

Tessellation2D sample_voronoi(double lambda, double R_gen, double R_safe,
                              std::uint64_t seed);

// Same construction from an explicit generator list (coupling experiments).
Tessellation2D build_voronoi(std::vector<Pt> generators, double lambda,
                             double R_gen, double R_safe, std::uint64_t seed);

// Cell containing x (nearest generator; exact distance ties broken by
// lexicographically smallest generator). x must lie in the safe window.
int cell_at(const Tessellation2D& t, Pt x);

// Graph ball B_n around a cell in the adjacency graph (n hops).
struct GraphBall {
    std::vector<int> members;  // ascending cell ids
    bool touched_boundary = false;
};
GraphBall graph_ball(const Tessellation2D& t, int center_cell, int n);

// Union of the cells of B_n; area is exact when censored == false.
struct ContinuousBall {
    std::vector<int> members;
    double area = 0;
    bool censored = false;
};
ContinuousBall continuous_ball(const Tessellation2D& t, int center_cell, int n);

void save_tessellation_json(const Tessellation2D& t, const std::string& path);

} // namespace fpptess
