#pragma once

#include <cstddef>
#include <vector>

#include "fpptess/vec.hpp"

namespace fpptess {

// S(u, r, delta) = { x : |x| <= r, <x/|x|, u> >= 1 - delta }, with x = 0
// contained by convention.
struct SphericalSector {
    Vec u;          // unit axis direction
    double r = 0;   // radius, > 0
    double delta;   // aperture parameter in (0, 2]

    SphericalSector(Vec axis, double radius, double aperture);
};

bool sector_contains(const SphericalSector& s, const Vec& x);

// Inner-product lower bound valid in any Hilbert space:
// <x,y> >= <x,z> + <y,z> - <z,z>
//          - sqrt((<x,x>+<z,z>-2<x,z>) (<y,y>+<z,z>-2<y,z>)).
// Returns the right-hand side.
double hilbert_bound(const Vec& x, const Vec& y, const Vec& z);

// sup distance between points of S(u,r2,delta) \ S(u,r1,delta) is at most
// r2 - r1 + 2 r2 sqrt(2 delta); returns that bound.
double shell_diameter_bound(double r1, double r2, double delta);

// Directions u_1..u_k on the unit sphere such that the sectors
// S(u_i, 1, delta) cover it, built from the axis-aligned cube construction
// (side delta / (2 sqrt d), one unit point per cube meeting the sphere).
struct Covering {
    double delta;
    std::vector<Vec> directions;
    std::size_t k = 0;       // directions.size()
    double c1 = 0;           // explicit constant of the size bound
    double size_bound = 0;   // c1 * delta^(1-d)
};

Covering sphere_covering(std::size_t d, double delta);

} // namespace fpptess
