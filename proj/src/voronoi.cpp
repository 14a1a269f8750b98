#include "fpptess/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include <json.hpp>

#include "fpptess/delaunay.hpp"
#include "fpptess/errors.hpp"

namespace fpptess {

namespace {

void rotate_to_lex_min(Polygon& poly) {
    if (poly.empty()) return;
    std::size_t best = 0;
    for (std::size_t i = 1; i < poly.size(); ++i)
        if (poly[i].x < poly[best].x ||
            (poly[i].x == poly[best].x && poly[i].y < poly[best].y))
            best = i;
    std::rotate(poly.begin(), poly.begin() + static_cast<long>(best), poly.end());
}

void build_grid(Tessellation2D& t) {
    double h = 1.0 / std::sqrt(t.lambda);
    int n = static_cast<int>(std::ceil(2.0 * t.R_gen / h));
    n = std::clamp(n, 1, 768);
    t.grid_h = 2.0 * t.R_gen / n;
    t.grid_n = n;
    t.grid.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        Pt g = t.cells[i].generator;
        int gx = std::clamp(static_cast<int>((g.x + t.R_gen) / t.grid_h), 0, n - 1);
        int gy = std::clamp(static_cast<int>((g.y + t.R_gen) / t.grid_h), 0, n - 1);
        t.grid[static_cast<std::size_t>(gy) * static_cast<std::size_t>(n) +
               static_cast<std::size_t>(gx)]
            .push_back(static_cast<int>(i));
    }
}

} // namespace

Tessellation2D build_voronoi(std::vector<Pt> generators, double lambda,
                             double R_gen, double R_safe, std::uint64_t seed) {
    if (!(lambda > 0.0))
        throw invalid_parameter("voronoi: lambda must be > 0");
    if (!(R_gen > 0.0 && R_safe > 0.0 && R_safe < R_gen))
        throw invalid_parameter("voronoi: need 0 < R_safe < R_gen");
    double margin = R_gen - R_safe;
    if (margin < 5.0 / std::sqrt(lambda) - 1e-9)
        throw construction_unsafe(
            "voronoi: margin R_gen - R_safe below 5 / sqrt(lambda)");

    Tessellation2D t;
    t.lambda = lambda;
    t.R_gen = R_gen;
    t.R_safe = R_safe;
    t.seed = seed;

    Delaunay dt(generators, R_gen);
    const auto& tris = dt.triangles();

    // circumcenters of fully real triangles
    std::vector<Pt> cc(tris.size(), Pt{0, 0});
    std::vector<char> cc_ok(tris.size(), 0);
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
        const auto& tr = tris[ti];
        if (!tr.alive) continue;
        if (dt.is_super(tr.v[0]) || dt.is_super(tr.v[1]) || dt.is_super(tr.v[2]))
            continue;
        const auto& vs = dt.vertices();
        cc[ti] = circumcenter(vs[static_cast<std::size_t>(tr.v[0])],
                              vs[static_cast<std::size_t>(tr.v[1])],
                              vs[static_cast<std::size_t>(tr.v[2])]);
        cc_ok[ti] = 1;
    }

    t.cells.resize(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        VoronoiCell& cell = t.cells[i];
        cell.generator = generators[i];
        Delaunay::Fan fan = dt.vertex_fan(i);
        cell.complete = fan.complete;
        if (fan.complete) {
            for (int ti : fan.tris)
                cell.poly.push_back(cc[static_cast<std::size_t>(ti)]);
            rotate_to_lex_min(cell.poly);
            cell.area = polygon_area(cell.poly);
            cell.perimeter = polygon_perimeter(cell.poly);
            bool outside = false;
            for (const Pt& v : cell.poly)
                if (pt_norm(v) > R_safe) outside = true;
            cell.touches_margin = outside;
        } else {
            cell.touches_margin = true;
        }
    }

    // faces: one per Delaunay edge between real generators
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
        const auto& tr = tris[ti];
        if (!tr.alive) continue;
        for (int i = 0; i < 3; ++i) {
            int nb = tr.n[static_cast<std::size_t>(i)];
            if (nb < 0 || static_cast<std::size_t>(nb) < ti) continue;
            int a = tr.v[static_cast<std::size_t>((i + 1) % 3)];
            int b = tr.v[static_cast<std::size_t>((i + 2) % 3)];
            if (dt.is_super(a) || dt.is_super(b)) continue;
            VoronoiFace f;
            f.a = std::min(a, b) - Delaunay::kSuper;
            f.b = std::max(a, b) - Delaunay::kSuper;
            f.trusted = cc_ok[ti] && cc_ok[static_cast<std::size_t>(nb)];
            if (f.trusted) {
                f.p = cc[ti];
                f.q = cc[static_cast<std::size_t>(nb)];
            }
            t.faces.push_back(f);
        }
    }
    std::sort(t.faces.begin(), t.faces.end(), [](const VoronoiFace& x, const VoronoiFace& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    for (const VoronoiFace& f : t.faces) {
        t.cells[static_cast<std::size_t>(f.a)].neighbors.push_back(f.b);
        t.cells[static_cast<std::size_t>(f.b)].neighbors.push_back(f.a);
    }
    for (VoronoiCell& c : t.cells)
        std::sort(c.neighbors.begin(), c.neighbors.end());

    build_grid(t);
    return t;
}

Tessellation2D sample_voronoi(double lambda, double R_gen, double R_safe,
                              std::uint64_t seed) {
    RandomStream rng(seed);
    long n = rng.poisson(lambda * M_PI * R_gen * R_gen);
    std::vector<Pt> gens;
    gens.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        double r = R_gen * std::sqrt(rng.uniform01());
        double th = rng.uniform(0.0, 2.0 * M_PI);
        gens.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return build_voronoi(std::move(gens), lambda, R_gen, R_safe, seed);
}

int cell_at(const Tessellation2D& t, Pt x) {
    if (pt_norm(x) > t.R_safe)
        throw out_of_window("cell_at: query outside the safe window");
    if (t.cells.empty())
        throw out_of_window("cell_at: empty tessellation");

    int n = t.grid_n;
    int gx = std::clamp(static_cast<int>((x.x + t.R_gen) / t.grid_h), 0, n - 1);
    int gy = std::clamp(static_cast<int>((x.y + t.R_gen) / t.grid_h), 0, n - 1);

    int best = -1;
    double best_d2 = HUGE_VAL;
    auto consider = [&](int idx) {
        Pt g = t.cells[static_cast<std::size_t>(idx)].generator;
        double dx = g.x - x.x, dy = g.y - x.y;
        double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = idx;
        } else if (d2 == best_d2 && best >= 0) {
            Pt h = t.cells[static_cast<std::size_t>(best)].generator;
            if (g.x < h.x || (g.x == h.x && g.y < h.y)) best = idx;
        }
    };

    for (int ring = 0; ring < 2 * n; ++ring) {
        // once a candidate exists, stop when the ring cannot beat it
        if (best >= 0) {
            double ring_min = (static_cast<double>(ring) - 1.0) * t.grid_h;
            if (ring_min > 0.0 && ring_min * ring_min > best_d2) break;
        }
        int xlo = gx - ring, xhi = gx + ring;
        int ylo = gy - ring, yhi = gy + ring;
        for (int cy = ylo; cy <= yhi; ++cy) {
            if (cy < 0 || cy >= n) continue;
            for (int cx = xlo; cx <= xhi; ++cx) {
                if (cx < 0 || cx >= n) continue;
                if (ring > 0 && cx != xlo && cx != xhi && cy != ylo && cy != yhi)
                    continue;  // interior of the ring already visited
                for (int idx : t.grid[static_cast<std::size_t>(cy) * static_cast<std::size_t>(n) +
                                       static_cast<std::size_t>(cx)])
                    consider(idx);
            }
        }
    }
    if (best < 0) throw numeric_failure("cell_at: nearest-generator search failed");
    return best;
}

GraphBall graph_ball(const Tessellation2D& t, int center_cell, int n) {
    if (center_cell < 0 || static_cast<std::size_t>(center_cell) >= t.cells.size())
        throw invalid_parameter("graph_ball: bad center cell");
    if (n < 0) throw invalid_parameter("graph_ball: n must be >= 0");

    std::vector<int> dist(t.cells.size(), -1);
    std::deque<int> queue{center_cell};
    dist[static_cast<std::size_t>(center_cell)] = 0;
    GraphBall ball;
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        ball.members.push_back(c);
        if (t.cells[static_cast<std::size_t>(c)].touches_margin)
            ball.touched_boundary = true;
        if (dist[static_cast<std::size_t>(c)] == n) continue;
        for (int nb : t.cells[static_cast<std::size_t>(c)].neighbors) {
            if (dist[static_cast<std::size_t>(nb)] >= 0) continue;
            dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(c)] + 1;
            queue.push_back(nb);
        }
    }
    std::sort(ball.members.begin(), ball.members.end());
    return ball;
}

ContinuousBall continuous_ball(const Tessellation2D& t, int center_cell, int n) {
    GraphBall gb = graph_ball(t, center_cell, n);
    ContinuousBall cb;
    cb.members = gb.members;
    cb.censored = gb.touched_boundary;
    for (int c : cb.members)
        cb.area += t.cells[static_cast<std::size_t>(c)].area;
    return cb;
}

void save_tessellation_json(const Tessellation2D& t, const std::string& path) {
    nlohmann::json j;
    j["lambda"] = t.lambda;
    j["R_gen"] = t.R_gen;
    j["R_safe"] = t.R_safe;
    j["seed"] = t.seed;
    nlohmann::json cells = nlohmann::json::array();
    for (const VoronoiCell& c : t.cells) {
        nlohmann::json jc;
        jc["generator"] = {c.generator.x, c.generator.y};
        nlohmann::json poly = nlohmann::json::array();
        for (const Pt& v : c.poly) poly.push_back({v.x, v.y});
        jc["poly"] = poly;
        jc["complete"] = c.complete;
        jc["touches_margin"] = c.touches_margin;
        jc["neighbors"] = c.neighbors;
        cells.push_back(std::move(jc));
    }
    j["cells"] = cells;
    nlohmann::json faces = nlohmann::json::array();
    for (const VoronoiFace& f : t.faces) {
        nlohmann::json jf;
        jf["a"] = f.a;
        jf["b"] = f.b;
        jf["trusted"] = f.trusted;
        if (f.trusted) jf["segment"] = {{f.p.x, f.p.y}, {f.q.x, f.q.y}};
        faces.push_back(std::move(jf));
    }
    j["faces"] = faces;

    std::ofstream out(path);
    if (!out) throw io_failure("cannot open '" + path + "' for writing");
    out << j.dump() << "\n";
    if (!out) throw io_failure("write to '" + path + "' failed");
}

} // namespace fpptess
