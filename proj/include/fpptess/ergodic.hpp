#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fpptess/voronoi.hpp"

namespace fpptess {

// Translation-invariant functional of a cell inside its tessellation.
struct CellFunctional {
    std::string name;
    std::function<double(const VoronoiCell&, const Tessellation2D&)> eval;
    bool translation_invariant = true;
};

CellFunctional functional_constant();
CellFunctional functional_area();
CellFunctional functional_perimeter();
CellFunctional functional_neighbor_count();
// the fixed registry: {constant, area, perimeter, neighbor count}
std::vector<CellFunctional> standard_functionals();

struct IntensityEstimate {
    double mean = 0.0;         // MC mean of 1 / area(zero cell)
    double stderr_mean = 0.0;
    long n_used = 0;
    long n_censored = 0;
};

// E[1/Vol(Z0)] over fresh tessellations; the zero cell is the cell containing
// the origin.  R is the safe-window radius; seeds whose zero cell touches the
// margin are discarded and counted.  Requires R >= 8/sqrt(lambda).
IntensityEstimate cell_intensity_estimate(double lambda, double R, long n_seeds,
                                          std::uint64_t seed, int threads = 1);

struct PalmEstimate {
    double mean = 0.0;         // ratio estimator: sum f / cell count
    double stderr_mean = 0.0;  // delta-method standard error across seeds
    long n_cells = 0;
    long n_seeds = 0;
};

// Centers-in-box Palm estimator of the typical-cell expectation E0[f]:
// average of f over all cells whose generator falls in the unit box [0,1]^2,
// across seeds.  R is the safe-window radius, R >= 2 + 8/sqrt(lambda).
PalmEstimate palm_oracle(double lambda, double R, long n_seeds,
                         const CellFunctional& f, std::uint64_t seed,
                         int threads = 1);

// Mean of f over the members of a graph ball.
double ball_average(const Tessellation2D& t, const GraphBall& ball,
                    const CellFunctional& f);

struct BallSample {
    long size = 0;       // |B_n^M|
    double area = 0.0;   // Vol(B_n^tau)
    double avg_area = 0.0;
    double avg_perimeter = 0.0;
    double avg_neighbors = 0.0;
    bool censored = false;
};

// Ball of graph radius n around the cell containing the origin.
BallSample ball_sample(const Tessellation2D& t, int n);

struct ErgodicSeries {
    std::vector<int> n;
    std::vector<double> mean_size;     // E|B_n^M| over uncensored seeds
    std::vector<double> mean_area;     // E Vol(B_n^tau)
    std::vector<double> ratio_mean;    // mean of size/area (cell intensity)
    std::vector<double> ratio_stderr;
    std::vector<long> censored;        // censored seeds at this n
    long n_seeds = 0;
};

// Growth series for n = 0..n_max over fresh tessellations; windows are sized
// internally so censoring at n_max stays rare.
ErgodicSeries ball_growth_series(double lambda, int n_max, long n_seeds,
                                 std::uint64_t seed, int threads = 1);

// Safe-window radius heuristic for a graph ball of radius n.
double ball_window_radius(double lambda, int n);

// Exact spatial average of f(Z_x) over the disk |x| <= R:
//   sum over cells of f(cell) * area(cell ∩ disk) / (pi R^2).
// With f == 1 this is exactly 1 (partition identity).
double disk_average(const Tessellation2D& t, double R, const CellFunctional& f);

} // namespace fpptess
