#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fpptess/marks.hpp"
#include "fpptess/voronoi.hpp"

namespace fpptess {

// Dual graph of a tessellation with one passage weight per face.  Weights are
// drawn in the canonical (sorted) order of Tessellation2D::faces, so the same
// (tessellation, marks, seed) triple always yields the same marked graph.
struct MarkedGraph {
    std::vector<double> face_mark;
    // adjacency: per cell, (neighbor cell, face index)
    std::vector<std::vector<std::pair<int, int>>> adj;
};

MarkedGraph assign_marks(const Tessellation2D& t, const MarkDistribution& marks,
                         std::uint64_t seed);

struct PassageResult {
    double time = 0.0;
    int hops = 0;           // edge count along an optimal path
    bool censored = false;  // a margin cell was settled strictly earlier
    bool reachable = true;
};

// Shortest passage time between two cells (Dijkstra, early exit at target).
PassageResult tess_passage_time(const Tessellation2D& t, const MarkedGraph& g,
                                int from_cell, int to_cell);

// Passage times from a source to every cell; unreachable cells get +inf.
std::vector<double> tess_distances(const Tessellation2D& t, const MarkedGraph& g,
                                   int from_cell);

// Hop distances (unit weights) from a source; unreachable cells get -1.
std::vector<int> hop_distances(const Tessellation2D& t, int from_cell);

struct TimeConstantRow {
    double r = 0.0;
    double mean = 0.0;         // mean of tau(q(0), q(r u)) over replicates
    double stderr_mean = 0.0;
    long n_reps = 0;
    long n_censored = 0;
};

// Monte Carlo estimate of E[tau(q(0), q(r u))] for each r in r_list, using one
// fresh tessellation per replicate for all radii.  u must be a unit vector.
std::vector<TimeConstantRow> time_constant_estimate(
    double lambda, const MarkDistribution& marks, Pt u,
    const std::vector<double>& r_list, long n_reps, std::uint64_t seed,
    double R_gen, double R_safe, int threads = 1);

// Indices of cells whose polygon meets the closed axis box.  Requires the box
// to sit inside the safe window so every candidate cell is complete.
std::vector<int> cells_meeting_box(const Tessellation2D& t, const Box& box);

} // namespace fpptess
