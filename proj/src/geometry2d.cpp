#include "fpptess/geometry2d.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace fpptess {

using rational = boost::multiprecision::cpp_rational;

double dist(Pt a, Pt b) { return std::hypot(a.x - b.x, a.y - b.y); }
double pt_norm(Pt a) { return std::hypot(a.x, a.y); }

namespace {

// static filter constants, (3 + 16 eps) eps and (10 + 96 eps) eps
constexpr double kOrientErrBound = 3.3306690738754716e-16;
constexpr double kIncircleErrBound = 1.1102230246251577e-15;

int sign_of(const rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

int orient2d_exact(Pt a, Pt b, Pt c) {
    rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    rational det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    return sign_of(det);
}

int incircle_exact(Pt a, Pt b, Pt c, Pt d) {
    rational adx = rational(a.x) - rational(d.x);
    rational ady = rational(a.y) - rational(d.y);
    rational bdx = rational(b.x) - rational(d.x);
    rational bdy = rational(b.y) - rational(d.y);
    rational cdx = rational(c.x) - rational(d.x);
    rational cdy = rational(c.y) - rational(d.y);
    rational alift = adx * adx + ady * ady;
    rational blift = bdx * bdx + bdy * bdy;
    rational clift = cdx * cdx + cdy * cdy;
    rational det = alift * (bdx * cdy - bdy * cdx)
                 + blift * (cdx * ady - cdy * adx)
                 + clift * (adx * bdy - ady * bdx);
    return sign_of(det);
}

} // namespace

int orient2d(Pt a, Pt b, Pt c) {
    double detleft = (a.x - c.x) * (b.y - c.y);
    double detright = (a.y - c.y) * (b.x - c.x);
    double det = detleft - detright;
    double detsum = std::abs(detleft) + std::abs(detright);
    if (std::abs(det) > kOrientErrBound * detsum) return det > 0 ? 1 : -1;
    return orient2d_exact(a, b, c);
}

int incircle(Pt a, Pt b, Pt c, Pt d) {
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;

    double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    double cdxady = cdx * ady, adxcdy = adx * cdy;
    double adxbdy = adx * bdy, bdxady = bdx * ady;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;

    double det = alift * (bdxcdy - cdxbdy)
               + blift * (cdxady - adxcdy)
               + clift * (adxbdy - bdxady);
    double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift
                     + (std::abs(cdxady) + std::abs(adxcdy)) * blift
                     + (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > kIncircleErrBound * permanent) return det > 0 ? 1 : -1;
    return incircle_exact(a, b, c, d);
}

Pt circumcenter(Pt a, Pt b, Pt c) {
    double abx = b.x - a.x, aby = b.y - a.y;
    double acx = c.x - a.x, acy = c.y - a.y;
    double d = 2.0 * (abx * acy - aby * acx);
    double ab2 = abx * abx + aby * aby;
    double ac2 = acx * acx + acy * acy;
    double ux = (acy * ab2 - aby * ac2) / d;
    double uy = (abx * ac2 - acx * ab2) / d;
    return {a.x + ux, a.y + uy};
}

double polygon_area(const Polygon& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Pt& u = p[i];
        const Pt& v = p[(i + 1) % p.size()];
        s += cross(u, v);
    }
    return 0.5 * s;
}

double polygon_perimeter(const Polygon& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += dist(p[i], p[(i + 1) % p.size()]);
    return s;
}

namespace {

// signed circular-sector area swept from direction p to direction q
// (both relative to the disk center); segment (p,q) must not pass through
// the center, so the swept angle is < pi and atan2 gives it exactly
double sector_area(Pt p, Pt q, double R) {
    double ang = std::atan2(cross(p, q), dot(p, q));
    return 0.5 * R * R * ang;
}

double edge_disk_contribution(Pt a, Pt b, double R) {
    double ra2 = dot(a, a), rb2 = dot(b, b), R2 = R * R;
    bool in_a = ra2 <= R2, in_b = rb2 <= R2;
    if (in_a && in_b) return 0.5 * cross(a, b);

    // segment-circle intersection: |a + t(b-a)|^2 = R^2
    Pt d = b - a;
    double A = dot(d, d);
    if (A == 0.0) return 0.0;
    double B = dot(a, d), C = ra2 - R2;
    double disc = B * B - A * C;
    if (disc <= 0.0) return sector_area(a, b, R);  // line misses the circle
    double sq = std::sqrt(disc);
    double t1 = (-B - sq) / A, t2 = (-B + sq) / A;

    if (in_a && !in_b) {
        double t = std::clamp(t2, 0.0, 1.0);
        Pt p = a + t * d;
        return 0.5 * cross(a, p) + sector_area(p, b, R);
    }
    if (!in_a && in_b) {
        double t = std::clamp(t1, 0.0, 1.0);
        Pt p = a + t * d;
        return sector_area(a, p, R) + 0.5 * cross(p, b);
    }
    // both endpoints outside: the chord [t1,t2] may dip into the disk
    if (t1 >= 1.0 || t2 <= 0.0 || t1 >= t2) return sector_area(a, b, R);
    t1 = std::max(t1, 0.0);
    t2 = std::min(t2, 1.0);
    Pt p = a + t1 * d, q = a + t2 * d;
    return sector_area(a, p, R) + 0.5 * cross(p, q) + sector_area(q, b, R);
}

} // namespace

double disk_polygon_area(const Polygon& poly, Pt center, double R) {
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Pt a = poly[i] - center;
        Pt b = poly[(i + 1) % poly.size()] - center;
        s += edge_disk_contribution(a, b, R);
    }
    return s;
}

namespace {

void project_polygon(const Polygon& p, Pt axis, double& lo, double& hi) {
    lo = hi = dot(p[0], axis);
    for (std::size_t i = 1; i < p.size(); ++i) {
        double v = dot(p[i], axis);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
}

} // namespace

bool convex_polygon_meets_box(const Polygon& p, const Box& b) {
    if (p.empty()) return false;
    // box axes
    double lo, hi;
    project_polygon(p, {1, 0}, lo, hi);
    if (hi < b.xlo || lo > b.xhi) return false;
    project_polygon(p, {0, 1}, lo, hi);
    if (hi < b.ylo || lo > b.yhi) return false;
    // polygon edge normals
    Polygon boxpts = {{b.xlo, b.ylo}, {b.xhi, b.ylo}, {b.xhi, b.yhi}, {b.xlo, b.yhi}};
    for (std::size_t i = 0; i < p.size(); ++i) {
        Pt e = p[(i + 1) % p.size()] - p[i];
        Pt n{-e.y, e.x};
        double plo, phi, blo, bhi;
        project_polygon(p, n, plo, phi);
        project_polygon(boxpts, n, blo, bhi);
        if (phi < blo || plo > bhi) return false;
    }
    return true;
}

bool polygon_inside_box(const Polygon& p, const Box& b) {
    for (const Pt& v : p)
        if (!b.contains(v)) return false;
    return true;
}

} // namespace fpptess
