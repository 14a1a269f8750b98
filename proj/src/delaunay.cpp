#include "fpptess/delaunay.hpp"

#include <cmath>

#include "fpptess/errors.hpp"

namespace fpptess {

Delaunay::Delaunay(const std::vector<Pt>& points, double bound_radius) {
    for (const Pt& p : points)
        if (pt_norm(p) > bound_radius)
            throw invalid_parameter("Delaunay: point outside the stated bound");

    double D = 1e4 * (bound_radius + 1.0);
    pts_.push_back({0.0, 2.0 * D});
    pts_.push_back({-1.7320508075688772 * D, -D});
    pts_.push_back({1.7320508075688772 * D, -D});
    for (const Pt& p : points) pts_.push_back(p);

    Triangle root;
    root.v = {0, 1, 2};
    root.n = {-1, -1, -1};
    tris_.reserve(2 * pts_.size() + 16);
    tris_.push_back(root);
    vertex_tri_.assign(pts_.size(), 0);
    spoke_tri_.assign(2 * pts_.size(), -1);
    spoke_stamp_.assign(2 * pts_.size(), 0);

    for (std::size_t i = 0; i < points.size(); ++i)
        insert(static_cast<int>(i) + kSuper);
}

int Delaunay::vertex_index_in(int tri, int vi) const {
    const Triangle& t = tris_[static_cast<std::size_t>(tri)];
    for (int i = 0; i < 3; ++i)
        if (t.v[static_cast<std::size_t>(i)] == vi) return i;
    return -1;
}

int Delaunay::locate(Pt p, int hint) const {
    int cur = hint;
    if (cur < 0 || !tris_[static_cast<std::size_t>(cur)].alive) cur = 0;
    while (!tris_[static_cast<std::size_t>(cur)].alive) ++cur;
    // visibility walk; terminates because the triangulation is Delaunay at
    // every insertion step
    while (true) {
        const Triangle& t = tris_[static_cast<std::size_t>(cur)];
        bool moved = false;
        for (int i = 0; i < 3; ++i) {
            Pt e1 = pts_[static_cast<std::size_t>(t.v[static_cast<std::size_t>((i + 1) % 3)])];
            Pt e2 = pts_[static_cast<std::size_t>(t.v[static_cast<std::size_t>((i + 2) % 3)])];
            if (orient2d(e1, e2, p) < 0) {
                int nb = t.n[static_cast<std::size_t>(i)];
                if (nb < 0)
                    throw numeric_failure("Delaunay walk left the triangulation");
                cur = nb;
                moved = true;
                break;
            }
        }
        if (!moved) return cur;
    }
}

void Delaunay::insert(int vi) {
    epoch_ += 2;
    tri_stamp_.resize(tris_.size() + 8, 0);

    Pt p = pts_[static_cast<std::size_t>(vi)];
    int t0 = locate(p, last_tri_);

    // exact duplicates cannot be triangulated
    for (int i = 0; i < 3; ++i) {
        Pt q = pts_[static_cast<std::size_t>(
            tris_[static_cast<std::size_t>(t0)].v[static_cast<std::size_t>(i)])];
        if (q.x == p.x && q.y == p.y)
            throw invalid_parameter("Delaunay: duplicate point");
    }

    // cavity: connected set of triangles whose circumdisk strictly contains
    // p; tri_stamp_ values: epoch -> visited, epoch + 1 -> member
    cavity_.clear();
    stack_.clear();
    stack_.push_back(t0);
    tri_stamp_[static_cast<std::size_t>(t0)] = epoch_;
    while (!stack_.empty()) {
        int ti = stack_.back();
        stack_.pop_back();
        const Triangle& t = tris_[static_cast<std::size_t>(ti)];
        Pt a = pts_[static_cast<std::size_t>(t.v[0])];
        Pt b = pts_[static_cast<std::size_t>(t.v[1])];
        Pt c = pts_[static_cast<std::size_t>(t.v[2])];
        bool in = (ti == t0) || incircle(a, b, c, p) > 0;
        if (!in) continue;
        cavity_.push_back(ti);
        tri_stamp_[static_cast<std::size_t>(ti)] = epoch_ + 1;
        for (int i = 0; i < 3; ++i) {
            int nb = t.n[static_cast<std::size_t>(i)];
            if (nb >= 0 && tri_stamp_[static_cast<std::size_t>(nb)] < epoch_) {
                tri_stamp_[static_cast<std::size_t>(nb)] = epoch_;
                stack_.push_back(nb);
            }
        }
    }

    // boundary edges of the cavity, oriented with the cavity on the left
    boundary_.clear();
    for (int ti : cavity_) {
        const Triangle& t = tris_[static_cast<std::size_t>(ti)];
        for (int i = 0; i < 3; ++i) {
            int nb = t.n[static_cast<std::size_t>(i)];
            if (nb >= 0 && tri_stamp_[static_cast<std::size_t>(nb)] == epoch_ + 1)
                continue;
            BoundaryEdge be;
            be.e1 = t.v[static_cast<std::size_t>((i + 1) % 3)];
            be.e2 = t.v[static_cast<std::size_t>((i + 2) % 3)];
            be.outer = nb;
            be.outer_slot = -1;
            if (nb >= 0) {
                const Triangle& o = tris_[static_cast<std::size_t>(nb)];
                for (int j = 0; j < 3; ++j)
                    if (o.n[static_cast<std::size_t>(j)] == ti) be.outer_slot = j;
            }
            boundary_.push_back(be);
        }
    }

    for (int ti : cavity_) tris_[static_cast<std::size_t>(ti)].alive = false;

    // fan of new triangles (p, e1, e2); link across shared spokes using the
    // stamped per-vertex scratch (slot 2*v for "v is e1", 2*v+1 for "v is e2")
    created_.clear();
    for (const BoundaryEdge& be : boundary_) {
        Triangle nt;
        nt.v = {vi, be.e1, be.e2};
        nt.n = {be.outer, -1, -1};
        int idx = static_cast<int>(tris_.size());
        tris_.push_back(nt);
        created_.push_back(idx);
        spoke_tri_[static_cast<std::size_t>(2 * be.e1)] = idx;
        spoke_stamp_[static_cast<std::size_t>(2 * be.e1)] = epoch_;
        spoke_tri_[static_cast<std::size_t>(2 * be.e2 + 1)] = idx;
        spoke_stamp_[static_cast<std::size_t>(2 * be.e2 + 1)] = epoch_;
        if (be.outer >= 0 && be.outer_slot >= 0)
            tris_[static_cast<std::size_t>(be.outer)]
                .n[static_cast<std::size_t>(be.outer_slot)] = idx;
    }
    for (int idx : created_) {
        Triangle& t = tris_[static_cast<std::size_t>(idx)];
        std::size_t e1_slot = static_cast<std::size_t>(2 * t.v[2]);      // whose e1 == our e2
        std::size_t e2_slot = static_cast<std::size_t>(2 * t.v[1] + 1);  // whose e2 == our e1
        if (spoke_stamp_[e1_slot] != epoch_ || spoke_stamp_[e2_slot] != epoch_)
            throw numeric_failure("Delaunay cavity boundary did not close");
        t.n[1] = spoke_tri_[e1_slot];
        t.n[2] = spoke_tri_[e2_slot];
        for (int i = 0; i < 3; ++i)
            vertex_tri_[static_cast<std::size_t>(t.v[static_cast<std::size_t>(i)])] = idx;
    }
    last_tri_ = created_.empty() ? last_tri_ : created_.back();
}

Delaunay::Fan Delaunay::vertex_fan(std::size_t data_idx) const {
    int vi = internal_index(data_idx);
    Fan fan;
    int start = vertex_tri_[static_cast<std::size_t>(vi)];
    int cur = start;
    // rotate counterclockwise: from the triangle with v at slot i, the next
    // triangle counterclockwise around v is across the edge opposite (i+1)
    while (true) {
        const Triangle& t = tris_[static_cast<std::size_t>(cur)];
        fan.tris.push_back(cur);
        for (int i = 0; i < 3; ++i)
            if (is_super(t.v[static_cast<std::size_t>(i)])) fan.complete = false;
        int i = vertex_index_in(cur, vi);
        if (i < 0) throw numeric_failure("Delaunay fan walk lost its vertex");
        int next = t.n[static_cast<std::size_t>((i + 1) % 3)];
        if (next < 0) {  // hull reached (only possible next to the helpers)
            fan.complete = false;
            break;
        }
        if (next == start) break;
        cur = next;
        if (fan.tris.size() > tris_.size())
            throw numeric_failure("Delaunay fan walk did not close");
    }
    return fan;
}

} // namespace fpptess
