#include "fpptess/pht_fpp.hpp"

#include <algorithm>
#include <cmath>

#include "fpptess/errors.hpp"
#include "fpptess/parallel.hpp"
#include "fpptess/sector.hpp"

namespace fpptess {

double passage_time(const PhtSample& s, const Vec& x, const Vec& y,
                    CrossingConvention conv) {
    if (x.size() != s.d || y.size() != s.d)
        throw invalid_parameter("passage_time: dimension mismatch");
    double tol = s.R * (1.0 + 1e-12);
    if (norm(x) > tol || norm(y) > tol)
        throw out_of_window("passage_time: query point outside sampled window");
    double t = 0.0;
    for (const Hyperplane& h : s.planes) {
        double a = dot(x, h.u) - h.r;
        double b = dot(y, h.u) - h.r;
        if (segment_crosses(a, b, conv)) t += h.mark;
    }
    return t;
}

double mu(const TimeConstantModel& m, const Vec& x) {
    return m.marks->mean() * expected_crossings(m.gamma, *m.phi, x);
}

namespace {

void require_nondegenerate(const TimeConstantModel& m) {
    if (!(m.marks->mean() > 0.0))
        throw invalid_parameter(
            "degenerate limit shape: mark mean is zero, mu vanishes everywhere");
}

std::vector<Vec> shape_directions(const TimeConstantModel& m, std::size_t n_dirs) {
    std::size_t d = m.phi->dim();
    std::vector<Vec> dirs;
    if (d == 2) {
        for (std::size_t k = 0; k < n_dirs; ++k) {
            double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_dirs);
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    } else {
        double delta = 1.0;
        Covering cov = sphere_covering(d, delta);
        while (cov.k < n_dirs) {
            delta *= 0.5;
            cov = sphere_covering(d, delta);
        }
        dirs = cov.directions;
    }
    return dirs;
}

} // namespace

LimitShape limit_shape(const TimeConstantModel& m, std::size_t n_dirs) {
    if (n_dirs < 4) throw invalid_parameter("limit_shape: need n_dirs >= 4");
    require_nondegenerate(m);
    LimitShape shape;
    shape.directions = shape_directions(m, n_dirs);
    for (const Vec& u : shape.directions)
        shape.radii.push_back(1.0 / mu(m, u));
    return shape;
}

double max_mu_on_sphere(const TimeConstantModel& m) {
    double best = 0.0;
    for (const Vec& u : shape_directions(m, m.phi->dim() == 2 ? 4096 : 256))
        best = std::max(best, mu(m, u));
    return best;
}

std::vector<SweepRow> direction_sweep(const TimeConstantModel& m, double r,
                                      std::size_t n_dirs, std::size_t n_reps,
                                      std::uint64_t seed, unsigned threads) {
    if (!(r > 0.0)) throw invalid_parameter("direction_sweep: r must be > 0");
    if (n_reps < 2) throw invalid_parameter("direction_sweep: need n_reps >= 2");
    std::vector<Vec> dirs = shape_directions(m, n_dirs);

    // tau values per (rep, direction), filled index-addressed so that the
    // reduction below is independent of the thread count
    std::vector<std::vector<double>> tau(n_reps);
    parallel_for(n_reps, threads, [&](std::size_t rep) {
        std::uint64_t rep_seed = substream_seed(seed, rep);
        PhtSample s = sample_pht(m.gamma, m.phi, r, m.marks, rep_seed);
        Vec origin = zero_vec(s.d);
        std::vector<double>& row = tau[rep];
        row.resize(dirs.size());
        for (std::size_t i = 0; i < dirs.size(); ++i)
            row[i] = passage_time(s, origin, scale(r, dirs[i]));
    });

    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t rep = 0; rep < n_reps; ++rep) {
            double v = tau[rep][i] / r;
            s1 += v;
            s2 += v * v;
        }
        double n = static_cast<double>(n_reps);
        double mean = s1 / n;
        double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
        SweepRow row;
        row.u = dirs[i];
        row.r = r;
        row.mean_tau_over_r = mean;
        row.stderr_mean = std::sqrt(var / n);
        row.mu_analytic = mu(m, dirs[i]);
        row.n_reps = n_reps;
        rows.push_back(std::move(row));
    }
    return rows;
}

double deviation_grid_delta(const TimeConstantModel& m, double eps) {
    if (!(eps > 0.0)) throw invalid_parameter("deviation grid: eps must be > 0");
    std::size_t d = m.phi->dim();
    double c2 = 1.0 + std::sqrt(8.0);
    double max_axis_mu = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        max_axis_mu = std::max(max_axis_mu, mu(m, unit_axis(d, i)));
    double c3 = 2.0 * std::sqrt(2.0) * max_axis_mu;
    double sqrt_delta = eps / (2.0 * (m.gamma * c2 + c3));
    return sqrt_delta * sqrt_delta;
}

namespace {

// One replicate of the exceedance indicator on a fixed direction grid.
// Generic path: evaluate tau for every grid direction directly.
bool exceeds_generic(const PhtSample& s, double r, const std::vector<Vec>& dirs,
                     const std::vector<double>& mu_r, double eps_r) {
    Vec origin = zero_vec(s.d);
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        double t = passage_time(s, origin, scale(r, dirs[i]));
        if (std::abs(t - mu_r[i]) > eps_r) return true;
    }
    return false;
}

// d = 2 fast path: each plane contributes its mark to an angular arc of
// directions; accumulate arcs into a difference array over the sorted grid
// angles, then prefix-sum. Arc boundaries found by binary search on the
// angle and then nudged with the exact crossing predicate so the result
// matches the direct evaluation bit for bit.
struct ArcAccumulator {
    double r;
    std::vector<double> angles;  // sorted, in [-pi, pi)
    std::vector<Vec> dirs;       // unit vectors matching `angles`

    bool crosses(const Hyperplane& h, std::size_t i) const {
        double a = -h.r;
        double b = r * dot(dirs[i], h.u) - h.r;
        return segment_crosses(a, b);
    }

    // largest contiguous index set around the arc center where the exact
    // predicate holds; returns [lo, hi] inclusive in circular index space,
    // or false if the plane crosses no grid direction
    bool arc_range(const Hyperplane& h, std::size_t& lo, std::size_t& hi) const {
        std::size_t g = angles.size();
        double c = h.r / r;
        if (h.r == 0.0) {  // plane through the origin: crosses everything
            lo = 0;
            hi = g - 1;
            return true;
        }
        if (c >= 1.0) {
            // may still cross a direction whose dot exceeds r by rounding
            return false;
        }
        double theta = std::atan2(h.u[1], h.u[0]);
        double alpha = std::acos(c);

        // candidate index closest to the arc center
        auto it = std::lower_bound(angles.begin(), angles.end(), theta);
        std::size_t center = (it == angles.end()) ? 0 : static_cast<std::size_t>(it - angles.begin());
        // probe center and its neighbor for a crossing index to anchor on
        std::size_t anchor = g;  // g = none
        for (std::size_t off = 0; off < g && off <= 4; ++off) {
            std::size_t cands[2] = {(center + off) % g, (center + g - off) % g};
            for (std::size_t cand : cands)
                if (crosses(h, cand)) { anchor = cand; break; }
            if (anchor != g) break;
        }
        if (anchor == g) {
            // very narrow arc: fall back to a bounded scan over indices whose
            // angle is within alpha + one grid step of theta
            double pad = alpha + 4.0 * M_PI / static_cast<double>(g);
            for (std::size_t i = 0; i < g; ++i) {
                double dth = std::remainder(angles[i] - theta, 2.0 * M_PI);
                if (std::abs(dth) <= pad && crosses(h, i)) { anchor = i; break; }
            }
            if (anchor == g) return false;
        }
        // expand from the anchor in both circular directions
        lo = anchor;
        while (true) {
            std::size_t prev = (lo + g - 1) % g;
            if (prev == anchor || !crosses(h, prev)) break;
            lo = prev;
        }
        hi = anchor;
        while (true) {
            std::size_t next = (hi + 1) % g;
            if (next == lo || next == anchor || !crosses(h, next)) break;
            hi = next;
        }
        return true;
    }

    // tau per grid direction for one sample
    void accumulate(const PhtSample& s, std::vector<double>& tau) const {
        std::size_t g = angles.size();
        std::vector<double> diff(g + 1, 0.0);
        double full = 0.0;  // marks applying to the whole circle
        for (const Hyperplane& h : s.planes) {
            std::size_t lo, hi;
            if (!arc_range(h, lo, hi)) continue;
            if (lo == 0 && hi == g - 1) {
                full += h.mark;
                continue;
            }
            if (lo <= hi) {
                diff[lo] += h.mark;
                diff[hi + 1] -= h.mark;
            } else {  // wraps past -pi
                diff[lo] += h.mark;
                diff[g] -= h.mark;
                diff[0] += h.mark;
                diff[hi + 1] -= h.mark;
            }
        }
        tau.assign(g, 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < g; ++i) {
            acc += diff[i];
            tau[i] = acc + full;
        }
    }
};

} // namespace

std::vector<DeviationRow> deviation_experiment(const TimeConstantModel& m,
                                               const std::vector<double>& r_list,
                                               const std::vector<double>& eps_list,
                                               std::size_t n_reps,
                                               std::uint64_t seed,
                                               unsigned threads) {
    require_nondegenerate(m);
    std::size_t d = m.phi->dim();
    double max_mu = max_mu_on_sphere(m);
    double decay_m = 8.0 * max_mu;

    std::vector<DeviationRow> rows;
    for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
        double eps = eps_list[ei];
        double delta = deviation_grid_delta(m, eps);
        Covering cov = sphere_covering(d, delta);

        // d = 2: sort directions by angle for the arc accumulator
        ArcAccumulator arcs;
        std::vector<Vec> dirs = cov.directions;
        if (d == 2) {
            std::sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) {
                return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
            });
            arcs.dirs = dirs;
            for (const Vec& u : dirs) arcs.angles.push_back(std::atan2(u[1], u[0]));
        }

        for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
            double r = r_list[ri];
            if (!(r >= 0.0))
                throw invalid_parameter("deviation_experiment: r must be >= 0");

            DeviationRow row;
            row.r = r;
            row.eps = eps;
            row.n_reps = n_reps;
            row.grid_size = dirs.size();
            row.grid_delta = delta;
            row.reference_decay = std::exp(-r * eps * eps / decay_m);

            if (r == 0.0) {  // tau(0,0) = 0 = mu(0): nothing can exceed
                row.exceed_prob = 0.0;
                rows.push_back(row);
                continue;
            }

            std::vector<double> mu_r(dirs.size());
            for (std::size_t i = 0; i < dirs.size(); ++i)
                mu_r[i] = mu(m, scale(r, dirs[i]));
            double eps_r = eps * r;

            arcs.r = r;  // fixed for this row; reps read it concurrently
            std::vector<char> exceeded(n_reps, 0);
            parallel_for(n_reps, threads, [&](std::size_t rep) {
                std::uint64_t rep_seed = substream_seed(
                    seed, (ei * r_list.size() + ri) * 1000003ULL + rep);
                PhtSample s = sample_pht(m.gamma, m.phi, r, m.marks, rep_seed);
                if (d == 2) {
                    std::vector<double> tau;
                    arcs.accumulate(s, tau);
                    for (std::size_t i = 0; i < tau.size(); ++i) {
                        if (std::abs(tau[i] - mu_r[i]) > eps_r) {
                            exceeded[rep] = 1;
                            break;
                        }
                    }
                } else {
                    exceeded[rep] = exceeds_generic(s, r, dirs, mu_r, eps_r) ? 1 : 0;
                }
            });
            std::size_t count = 0;
            for (char e : exceeded) count += static_cast<std::size_t>(e);
            row.exceed_prob = static_cast<double>(count) / static_cast<double>(n_reps);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace fpptess
