#pragma once

#include <cstdint>
#include <vector>

#include "fpptess/hyperplane.hpp"
#include "fpptess/tess_fpp.hpp"
#include "fpptess/voronoi.hpp"

namespace fpptess {

// Field over the integer sites v in {-box..box}^2 of the grid delta * Z^2.
// v^square denotes the block delta*(v + [-1/2,1/2]^2).
struct GridField {
    double delta = 1.0;
    int box = 0;
    std::vector<double> values;  // row-major over (vx + box, vy + box)

    int side() const { return 2 * box + 1; }
    std::size_t index(int vx, int vy) const {
        return static_cast<std::size_t>(vx + box) * static_cast<std::size_t>(side()) +
               static_cast<std::size_t>(vy + box);
    }
    double at(int vx, int vy) const { return values[index(vx, vy)]; }
    double& at(int vx, int vy) { return values[index(vx, vy)]; }
};

struct TamenessFields {
    GridField Y;  // generator count in v^square
    GridField U;  // 1 iff a cell meets v^square and leaves the 3x3 block around v
};

// Requires delta*(box+2)*sqrt(2) <= R_safe so every involved cell is exact.
TamenessFields compute_fields(const Tessellation2D& t, double delta, int box);

// W_v = 1 iff the minimal passage time from the cells meeting v^square to any
// cell leaving the 3x3 block around v is < rho (multi-source Dijkstra).
GridField compute_W_voronoi(const Tessellation2D& t, const MarkedGraph& g,
                            double delta, double rho, int box);

// Pixel-grid approximation of the same field for a planar hyperplane sample:
// passage times are evaluated along 4-neighbor pixel paths (pixel size
// delta/pixels), so the reported minimum is an upper bound on the true
// infimum over curves and the field is a sitewise lower bound on W.
GridField compute_W_pht(const PhtSample& s, double delta, double rho, int box,
                        int pixels = 8);

struct AnimalStat {
    long n = 0;
    double greedy_max_avg = 0.0;  // lower bound on the true animal maximum
    long n_restarts = 0;
};

// Best average of f over lattice animals of size n containing the origin,
// found by greedy growth plus randomized restarts.  Reported value is a
// LOWER bound on the exact maximum.
AnimalStat greedy_animal_max(const GridField& f, long n, long n_restarts,
                             std::uint64_t seed);

// Exact maximum via exhaustive enumeration (exponential; test oracle for
// small n and small grids only).
double exact_animal_max(const GridField& f, long n);

} // namespace fpptess
