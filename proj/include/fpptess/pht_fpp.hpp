#pragma once

#include <cstdint>
#include <vector>

#include "fpptess/hyperplane.hpp"

namespace fpptess {

// Passage process on a hyperplane sample: the optimal route between two
// points is the straight segment, so tau(x,y) is the sum of the marks of the
// planes separating x from y and the time constant is closed-form:
// mu(x) = E[mark] * Lambda(x).
struct TimeConstantModel {
    double gamma = 0;
    DirectionalPtr phi;
    MarkPtr marks;
};

// Sum of marks of planes met by [x, y). Zero planes -> 0.
double passage_time(const PhtSample& s, const Vec& x, const Vec& y,
                    CrossingConvention conv = {});

double mu(const TimeConstantModel& m, const Vec& x);

// Boundary of the limit shape {mu <= 1}: points u / mu(u). d = 2 uses a
// uniform angular grid of n_dirs directions; d >= 3 takes directions from
// sphere_covering with delta shrunk until at least n_dirs of them exist.
struct LimitShape {
    std::vector<Vec> directions;
    std::vector<double> radii;
};
LimitShape limit_shape(const TimeConstantModel& m, std::size_t n_dirs);

// max of mu over the unit sphere (fine grid / covering scan)
double max_mu_on_sphere(const TimeConstantModel& m);

// Monte Carlo estimate of E[tau(0, r u)] / r across a direction grid, with
// the analytic mu(u) alongside. Window radius R = r per query geometry.
struct SweepRow {
    Vec u;
    double r = 0;
    double mean_tau_over_r = 0;
    double stderr_mean = 0;
    double mu_analytic = 0;
    std::size_t n_reps = 0;
};
std::vector<SweepRow> direction_sweep(const TimeConstantModel& m, double r,
                                      std::size_t n_dirs, std::size_t n_reps,
                                      std::uint64_t seed, unsigned threads = 1);

// Shape-theorem deviation experiment: fraction of replicates in which some
// direction u on the proof-matched grid has |tau(0, r u) - mu(r u)| > eps r,
// next to the reference decay exp(-r eps^2 / (8 max_u mu(u))).
struct DeviationRow {
    double r = 0;
    double eps = 0;
    std::size_t n_reps = 0;
    double exceed_prob = 0;
    double reference_decay = 0;
    std::size_t grid_size = 0;
    double grid_delta = 0;
};
std::vector<DeviationRow> deviation_experiment(const TimeConstantModel& m,
                                               const std::vector<double>& r_list,
                                               const std::vector<double>& eps_list,
                                               std::size_t n_reps,
                                               std::uint64_t seed,
                                               unsigned threads = 1);

// Grid resolution from the covering argument: sqrt(delta) =
// eps / (2 (gamma c2 + c3)), c2 = 1 + sqrt(8), c3 = 2 sqrt(2) max_i mu(e_i).
double deviation_grid_delta(const TimeConstantModel& m, double eps);

} // namespace fpptess
