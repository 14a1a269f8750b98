#include "fpptess/ergodic.hpp"

#include <algorithm>
#include <cmath>

#include "fpptess/errors.hpp"
#include "fpptess/parallel.hpp"

namespace fpptess {

CellFunctional functional_constant() {
    return {"constant", [](const VoronoiCell&, const Tessellation2D&) { return 1.0; },
            true};
}

CellFunctional functional_area() {
    return {"area", [](const VoronoiCell& c, const Tessellation2D&) { return c.area; },
            true};
}

CellFunctional functional_perimeter() {
    return {"perimeter",
            [](const VoronoiCell& c, const Tessellation2D&) { return c.perimeter; },
            true};
}

CellFunctional functional_neighbor_count() {
    return {"neighbors",
            [](const VoronoiCell& c, const Tessellation2D&) {
                return static_cast<double>(c.neighbors.size());
            },
            true};
}

std::vector<CellFunctional> standard_functionals() {
    return {functional_constant(), functional_area(), functional_perimeter(),
            functional_neighbor_count()};
}

IntensityEstimate cell_intensity_estimate(double lambda, double R, long n_seeds,
                                          std::uint64_t seed, int threads) {
    if (!(lambda > 0.0)) throw invalid_parameter("cell_intensity: lambda must be > 0");
    if (n_seeds < 1) throw invalid_parameter("cell_intensity: n_seeds must be >= 1");
    double rt = std::sqrt(lambda);
    if (R < 8.0 / rt)
        throw invalid_parameter("cell_intensity: window too small for the zero cell");

    auto reps = static_cast<std::size_t>(n_seeds);
    std::vector<double> inv_area(reps, 0.0);
    std::vector<char> bad(reps, 0);
    double R_gen = R + 6.0 / rt;

    parallel_for(reps, threads, [&](std::size_t rep) {
        std::uint64_t s = substream_seed(seed, rep);
        Tessellation2D t = sample_voronoi(lambda, R_gen, R, s);
        if (t.cells.empty()) {
            bad[rep] = 1;
            return;
        }
        const VoronoiCell& z = t.cells[static_cast<std::size_t>(cell_at(t, {0, 0}))];
        if (!z.complete || z.touches_margin || !(z.area > 0.0)) {
            bad[rep] = 1;
            return;
        }
        inv_area[rep] = 1.0 / z.area;
    });

    IntensityEstimate out;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        if (bad[rep]) {
            ++out.n_censored;
            continue;
        }
        sum += inv_area[rep];
        sum2 += inv_area[rep] * inv_area[rep];
        ++out.n_used;
    }
    if (out.n_used > 0) out.mean = sum / static_cast<double>(out.n_used);
    if (out.n_used > 1) {
        double var = (sum2 - sum * sum / static_cast<double>(out.n_used)) /
                     static_cast<double>(out.n_used - 1);
        out.stderr_mean = std::sqrt(std::max(var, 0.0) / static_cast<double>(out.n_used));
    }
    return out;
}

PalmEstimate palm_oracle(double lambda, double R, long n_seeds,
                         const CellFunctional& f, std::uint64_t seed, int threads) {
    if (!(lambda > 0.0)) throw invalid_parameter("palm_oracle: lambda must be > 0");
    if (n_seeds < 2) throw invalid_parameter("palm_oracle: n_seeds must be >= 2");
    double rt = std::sqrt(lambda);
    if (R < 2.0 + 8.0 / rt)
        throw invalid_parameter("palm_oracle: window too small for the unit box");

    auto reps = static_cast<std::size_t>(n_seeds);
    std::vector<double> sums(reps, 0.0);
    std::vector<double> counts(reps, 0.0);
    double R_gen = R + 6.0 / rt;

    parallel_for(reps, threads, [&](std::size_t rep) {
        std::uint64_t s = substream_seed(seed, rep);
        Tessellation2D t = sample_voronoi(lambda, R_gen, R, s);
        for (const VoronoiCell& c : t.cells) {
            Pt g = c.generator;
            if (!(0.0 <= g.x && g.x < 1.0 && 0.0 <= g.y && g.y < 1.0)) continue;
            if (!c.complete)
                throw construction_unsafe("palm_oracle: incomplete cell in the box");
            sums[rep] += f.eval(c, t);
            counts[rep] += 1.0;
        }
    });

    PalmEstimate out;
    out.n_seeds = n_seeds;
    double S = 0.0, N = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        S += sums[rep];
        N += counts[rep];
    }
    out.n_cells = static_cast<long>(N);
    if (!(N > 0.0)) throw numeric_failure("palm_oracle: no cells fell in the box");
    double ratio = S / N;
    out.mean = ratio;
    // delta-method variance of the ratio across seed blocks
    double nb = static_cast<double>(reps);
    double mean_count = N / nb;
    double acc = 0.0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        double d = sums[rep] - ratio * counts[rep];
        acc += d * d;
    }
    double var_blocks = acc / (nb - 1.0);
    out.stderr_mean = std::sqrt(var_blocks / nb) / mean_count;
    return out;
}

double ball_average(const Tessellation2D& t, const GraphBall& ball,
                    const CellFunctional& f) {
    if (ball.members.empty()) throw invalid_parameter("ball_average: empty ball");
    double sum = 0.0;
    for (int c : ball.members) sum += f.eval(t.cells[static_cast<std::size_t>(c)], t);
    return sum / static_cast<double>(ball.members.size());
}

BallSample ball_sample(const Tessellation2D& t, int n) {
    int center = cell_at(t, {0, 0});
    GraphBall gb = graph_ball(t, center, n);
    BallSample out;
    out.size = static_cast<long>(gb.members.size());
    out.censored = gb.touched_boundary;
    double sa = 0.0, sp = 0.0, sn = 0.0;
    for (int ci : gb.members) {
        const VoronoiCell& c = t.cells[static_cast<std::size_t>(ci)];
        if (!c.complete) {
            out.censored = true;
            continue;
        }
        out.area += c.area;
        sa += c.area;
        sp += c.perimeter;
        sn += static_cast<double>(c.neighbors.size());
    }
    if (out.size > 0) {
        out.avg_area = sa / static_cast<double>(out.size);
        out.avg_perimeter = sp / static_cast<double>(out.size);
        out.avg_neighbors = sn / static_cast<double>(out.size);
    }
    return out;
}

double ball_window_radius(double lambda, int n) {
    // graph balls reach about 1.35 n / sqrt(lambda) spatially (measured);
    // the constant is generous so censoring stays below the percent level
    return (1.6 * static_cast<double>(n) + 14.0) / std::sqrt(lambda);
}

ErgodicSeries ball_growth_series(double lambda, int n_max, long n_seeds,
                                 std::uint64_t seed, int threads) {
    if (n_max < 0) throw invalid_parameter("ball_growth_series: n_max must be >= 0");
    if (n_seeds < 2) throw invalid_parameter("ball_growth_series: n_seeds must be >= 2");

    double R_safe = ball_window_radius(lambda, n_max);
    double R_gen = R_safe + 6.0 / std::sqrt(lambda);
    auto reps = static_cast<std::size_t>(n_seeds);
    auto levels = static_cast<std::size_t>(n_max) + 1;

    std::vector<double> size_tab(reps * levels, 0.0);
    std::vector<double> area_tab(reps * levels, 0.0);
    std::vector<char> cens_tab(reps * levels, 0);

    parallel_for(reps, threads, [&](std::size_t rep) {
        std::uint64_t s = substream_seed(seed, rep);
        Tessellation2D t = sample_voronoi(lambda, R_gen, R_safe, s);
        for (std::size_t n = 0; n < levels; ++n) {
            BallSample b = ball_sample(t, static_cast<int>(n));
            size_tab[rep * levels + n] = static_cast<double>(b.size);
            area_tab[rep * levels + n] = b.area;
            cens_tab[rep * levels + n] = static_cast<char>(b.censored);
        }
    });

    ErgodicSeries out;
    out.n_seeds = n_seeds;
    for (std::size_t n = 0; n < levels; ++n) {
        double ssum = 0.0, asum = 0.0, rsum = 0.0, rsum2 = 0.0;
        long used = 0, cens = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            if (cens_tab[rep * levels + n]) {
                ++cens;
                continue;
            }
            double sz = size_tab[rep * levels + n];
            double ar = area_tab[rep * levels + n];
            if (!(ar > 0.0)) {
                ++cens;
                continue;
            }
            ssum += sz;
            asum += ar;
            double ratio = sz / ar;
            rsum += ratio;
            rsum2 += ratio * ratio;
            ++used;
        }
        out.n.push_back(static_cast<int>(n));
        out.censored.push_back(cens);
        if (used > 0) {
            out.mean_size.push_back(ssum / static_cast<double>(used));
            out.mean_area.push_back(asum / static_cast<double>(used));
            out.ratio_mean.push_back(rsum / static_cast<double>(used));
        } else {
            out.mean_size.push_back(0.0);
            out.mean_area.push_back(0.0);
            out.ratio_mean.push_back(0.0);
        }
        if (used > 1) {
            double var = (rsum2 - rsum * rsum / static_cast<double>(used)) /
                         static_cast<double>(used - 1);
            out.ratio_stderr.push_back(
                std::sqrt(std::max(var, 0.0) / static_cast<double>(used)));
        } else {
            out.ratio_stderr.push_back(0.0);
        }
    }
    return out;
}

double disk_average(const Tessellation2D& t, double R, const CellFunctional& f) {
    if (!(R > 0.0)) throw invalid_parameter("disk_average: R must be > 0");
    if (R > t.R_safe) throw out_of_window("disk_average: disk leaves the safe window");
    double acc = 0.0;
    for (const VoronoiCell& c : t.cells) {
        if (!c.complete) continue;
        double inter = disk_polygon_area(c.poly, {0.0, 0.0}, R);
        if (inter > 0.0) acc += f.eval(c, t) * inter;
    }
    return acc / (M_PI * R * R);
}

} // namespace fpptess
