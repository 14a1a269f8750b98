#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fpptess/geometry2d.hpp"

namespace fpptess {

// Incremental Bowyer-Watson Delaunay triangulation with robust predicates
// (filtered doubles, exact rational fallback). Three far-away helper
// vertices enclose the data; with exact predicates the construction is the
// exact Delaunay triangulation of data + helpers, so every triangle whose
// circumdisk stays clear of the helpers is a true Delaunay triangle of the
// data. Callers treat vertices with incomplete (helper-touching) fans as
// boundary vertices.
class Delaunay {
public:
    // `bound_radius`: all points must lie within this distance of the origin
    Delaunay(const std::vector<Pt>& points, double bound_radius);

    static constexpr int kSuper = 3;  // internal indices 0..2 are helpers

    struct Triangle {
        std::array<int, 3> v;  // vertex indices, counterclockwise
        std::array<int, 3> n;  // neighbor across the edge opposite v[i], -1 none
        bool alive = true;
    };

    const std::vector<Triangle>& triangles() const { return tris_; }
    const std::vector<Pt>& vertices() const { return pts_; }

    bool is_super(int internal_idx) const { return internal_idx < kSuper; }

    // data index -> internal index
    int internal_index(std::size_t data_idx) const {
        return static_cast<int>(data_idx) + kSuper;
    }

    // Alive triangles around a data vertex in counterclockwise order.
    // complete == false when the fan touches a helper vertex (hull vertex of
    // the data set); the triangle list is still the full fan.
    struct Fan {
        std::vector<int> tris;
        bool complete = true;
    };
    Fan vertex_fan(std::size_t data_idx) const;

private:
    struct BoundaryEdge {
        int e1, e2;
        int outer;       // triangle beyond the cavity, -1 at the hull
        int outer_slot;  // neighbor slot in `outer` to repoint
    };

    int locate(Pt p, int hint) const;
    void insert(int vi);
    int vertex_index_in(int tri, int vi) const;

    std::vector<Pt> pts_;
    std::vector<Triangle> tris_;
    std::vector<int> vertex_tri_;  // one alive triangle per vertex
    int last_tri_ = 0;

    // epoch-stamped scratch, reused across insertions
    int epoch_ = 0;
    std::vector<int> tri_stamp_;
    std::vector<int> spoke_tri_;
    std::vector<int> spoke_stamp_;
    std::vector<int> cavity_;
    std::vector<int> stack_;
    std::vector<BoundaryEdge> boundary_;
    std::vector<int> created_;
};

} // namespace fpptess
