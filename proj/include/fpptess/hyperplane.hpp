#pragma once

#include <string>
#include <vector>

#include "fpptess/directional.hpp"
#include "fpptess/marks.hpp"
#include "fpptess/vec.hpp"

namespace fpptess {

// E(u, r) = { x : <x,u> = r } with unit u and offset r >= 0, carrying an
// i.i.d. nonnegative mark.
struct Hyperplane {
    Vec u;
    double r = 0;
    double mark = 0;
};

// Segment convention for crossing counts: half-open [x, y) (a plane through
// x counts, a plane through y does not). Fixed per experiment.
struct CrossingConvention {
    bool half_open = true;
};

// Window sample of the process with intensity measure gamma * phi (x) Leb on
// directions x offsets in [0, R]: plane count ~ Poisson(gamma * R),
// directions i.i.d. phi, offsets i.i.d. Uniform[0, R].
struct PhtSample {
    double gamma = 0;
    double R = 0;
    std::uint64_t seed = 0;
    std::size_t d = 0;
    std::string phi_spec;
    std::string mark_spec;
    std::vector<Hyperplane> planes;
};

PhtSample sample_pht(double gamma, const DirectionalPtr& phi, double R,
                     const MarkPtr& marks, std::uint64_t seed);

// True iff the half-open segment [x, y) meets the plane, given the signed
// values a = <x,u> - r and b = <y,u> - r.
inline bool segment_crosses(double a, double b, CrossingConvention conv = {}) {
    (void)conv;  // only the half-open convention is defined
    if (a == 0.0) return true;   // x lies on the plane, [x,y) contains x
    if (b == 0.0) return false;  // only contact point would be y, excluded
    return (a > 0.0) != (b > 0.0);
}

// Number of sampled planes met by [x, y). Requires |x|, |y| <= R so the
// window determines the answer.
std::size_t crossing_count(const PhtSample& s, const Vec& x, const Vec& y,
                           CrossingConvention conv = {});

// Mean of the crossing-count law for the segment [0, x]:
// Lambda(x) = gamma * E_phi[(<x,u>)_+]. The number of planes separating 0
// from x is Poisson with this mean under the sampling convention above.
double expected_crossings(double gamma, const DirectionalDistribution& phi,
                          const Vec& x);

// Mean and variance of a compound Poisson sum with Poisson(lambda) terms:
// mean = lambda E[X], var = lambda E[X^2].
struct CompoundPoissonStats {
    double mean = 0;
    double variance = 0;
};
CompoundPoissonStats compound_poisson_stats(double lambda, const MarkDistribution& marks);

// JSON-lines round trip: one header record then one record per plane.
void save_pht_jsonl(const PhtSample& s, const std::string& path);
PhtSample load_pht_jsonl(const std::string& path);

} // namespace fpptess
