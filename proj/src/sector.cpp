#include "fpptess/sector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

#include "fpptess/errors.hpp"

namespace fpptess {

SphericalSector::SphericalSector(Vec axis, double radius, double aperture)
    : u(require_unit(axis, "SphericalSector")), r(radius), delta(aperture) {
    if (!(radius > 0.0))
        throw invalid_parameter("SphericalSector: radius must be > 0");
    if (!(aperture > 0.0 && aperture <= 2.0))
        throw invalid_parameter("SphericalSector: delta must be in (0, 2]");
}

bool sector_contains(const SphericalSector& s, const Vec& x) {
    double n = norm(x);
    if (n == 0.0) return true;
    if (n > s.r) return false;
    return dot(x, s.u) >= (1.0 - s.delta) * n;
}

double hilbert_bound(const Vec& x, const Vec& y, const Vec& z) {
    double xz = dot(x, z), yz = dot(y, z), zz = dot(z, z);
    double dx2 = dot(x, x) + zz - 2.0 * xz;  // |x-z|^2 up to rounding
    double dy2 = dot(y, y) + zz - 2.0 * yz;
    // rounding can push the squared distances a hair below zero
    dx2 = std::max(dx2, 0.0);
    dy2 = std::max(dy2, 0.0);
    return xz + yz - zz - std::sqrt(dx2 * dy2);
}

double shell_diameter_bound(double r1, double r2, double delta) {
    if (!(0.0 <= r1 && r1 <= r2))
        throw invalid_parameter("shell_diameter_bound: need 0 <= r1 <= r2");
    if (!(delta > 0.0 && delta <= 2.0))
        throw invalid_parameter("shell_diameter_bound: delta must be in (0, 2]");
    return r2 - r1 + 2.0 * r2 * std::sqrt(2.0 * delta);
}

namespace {

// kappa_d = volume of the unit ball in R^d
double unit_ball_volume(std::size_t d) {
    double k = static_cast<double>(d);
    return std::pow(M_PI, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

struct CubeScan {
    std::size_t d;
    double side;
    std::vector<long> idx;      // current cube multi-index
    std::vector<double> lo, hi; // per-coordinate cube bounds
    std::vector<Vec>* out;

    // Recursively enumerates cubes side*([0,1)^d + v) whose closure can meet
    // the unit sphere, pruning on the interval of attainable |x|^2.  The
    // remaining coordinates can add at most (1+side)^2 each.
    void scan(std::size_t coord, double min_acc, double max_acc) {
        if (min_acc > 1.0) return;
        double cap = static_cast<double>(d - coord) * (1.0 + side) * (1.0 + side);
        if (max_acc + cap < 1.0) return;
        if (coord == d) {
            emit();
            return;
        }
        long range = static_cast<long>(std::ceil(1.0 / side)) + 1;
        for (long v = -range; v < range; ++v) {
            double a = side * static_cast<double>(v);
            double b = a + side;
            double m = (a <= 0.0 && 0.0 <= b) ? 0.0 : std::min(a * a, b * b);
            double M = std::max(a * a, b * b);
            idx[coord] = v;
            lo[coord] = a;
            hi[coord] = b;
            scan(coord + 1, min_acc + m, max_acc + M);
        }
    }

    // One unit point inside the cube: walk the segment from the cube's
    // nearest-to-origin point to its farthest corner; it stays in the cube
    // and crosses the sphere because the cube meets it.
    void emit() {
        Vec p(d), q(d);
        for (std::size_t i = 0; i < d; ++i) {
            p[i] = std::clamp(0.0, lo[i], hi[i]);
            q[i] = (std::abs(lo[i]) > std::abs(hi[i])) ? lo[i] : hi[i];
        }
        double np2 = norm2(p), nq2 = norm2(q);
        if (np2 > 1.0 || nq2 < 1.0) return;  // closure-only contact; skip
        // solve |p + t(q-p)|^2 = 1 for t in [0,1]
        Vec dvec = sub(q, p);
        double A = norm2(dvec), B = dot(p, dvec), C = np2 - 1.0;
        double t;
        if (A <= 0.0) {
            t = 0.0;
        } else {
            double disc = std::max(B * B - A * C, 0.0);
            t = (-B + std::sqrt(disc)) / A;
            t = std::clamp(t, 0.0, 1.0);
        }
        Vec x = add(p, scale(t, dvec));
        double nx = norm(x);
        out->push_back(scale(1.0 / nx, x));
    }
};

} // namespace

Covering sphere_covering(std::size_t d, double delta) {
    if (d < 2) throw invalid_parameter("sphere_covering: need d >= 2");
    if (!(delta > 0.0 && delta <= 2.0))
        throw invalid_parameter("sphere_covering: delta must be in (0, 2]");

    Covering cov;
    cov.delta = delta;

    double sd = std::sqrt(static_cast<double>(d));
    CubeScan scan;
    scan.d = d;
    scan.side = delta / (2.0 * sd);
    scan.idx.assign(d, 0);
    scan.lo.assign(d, 0.0);
    scan.hi.assign(d, 0.0);
    scan.out = &cov.directions;
    scan.scan(0, 0.0, 0.0);

    cov.k = cov.directions.size();
    cov.c1 = unit_ball_volume(d) * std::pow(4.0 * sd, static_cast<double>(d));
    cov.size_bound = cov.c1 * std::pow(delta, 1.0 - static_cast<double>(d));
    return cov;
}

} // namespace fpptess
