#pragma once

#include <cstddef>
#include <vector>

namespace fpptess {

struct Pt {
    double x = 0, y = 0;
};

inline Pt operator+(Pt a, Pt b) { return {a.x + b.x, a.y + b.y}; }
inline Pt operator-(Pt a, Pt b) { return {a.x - b.x, a.y - b.y}; }
inline Pt operator*(double c, Pt a) { return {c * a.x, c * a.y}; }
inline double dot(Pt a, Pt b) { return a.x * b.x + a.y * b.y; }
inline double cross(Pt a, Pt b) { return a.x * b.y - a.y * b.x; }
double dist(Pt a, Pt b);
double pt_norm(Pt a);

// Sign of the area of triangle (a,b,c): +1 counterclockwise, -1 clockwise,
// 0 collinear. Double evaluation with a static error-bound filter; falls
// back to exact rational arithmetic when the filter cannot certify the sign.
int orient2d(Pt a, Pt b, Pt c);

// Sign of the in-circle determinant: +1 iff d lies strictly inside the
// circumcircle of the counterclockwise triangle (a,b,c). Same filter/exact
// strategy as orient2d.
int incircle(Pt a, Pt b, Pt c, Pt d);

// Circumcenter in doubles (used for Voronoi vertices, not for predicates).
Pt circumcenter(Pt a, Pt b, Pt c);

// Counterclockwise convex polygon as a vertex list.
using Polygon = std::vector<Pt>;

double polygon_area(const Polygon& p);
double polygon_perimeter(const Polygon& p);

// Area of the intersection of a simple counterclockwise polygon with the
// disk of radius R centered at `center` (edge-wise sector decomposition).
double disk_polygon_area(const Polygon& p, Pt center, double R);

struct Box {
    double xlo, ylo, xhi, yhi;
    bool contains(Pt p) const {
        return xlo <= p.x && p.x <= xhi && ylo <= p.y && p.y <= yhi;
    }
};

// Convex polygon vs axis-aligned box intersection test (separating axes).
bool convex_polygon_meets_box(const Polygon& p, const Box& b);

// All vertices inside the closed box (containment test for convex polygons).
bool polygon_inside_box(const Polygon& p, const Box& b);

} // namespace fpptess
