#include "fpptess/tess_fpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "fpptess/errors.hpp"
#include "fpptess/parallel.hpp"
#include "fpptess/vec.hpp"

namespace fpptess {

MarkedGraph assign_marks(const Tessellation2D& t, const MarkDistribution& marks,
                         std::uint64_t seed) {
    MarkedGraph g;
    g.face_mark.resize(t.faces.size());
    RandomStream rng(seed);
    for (std::size_t fi = 0; fi < t.faces.size(); ++fi)
        g.face_mark[fi] = marks.sample(rng);

    g.adj.resize(t.cells.size());
    for (std::size_t fi = 0; fi < t.faces.size(); ++fi) {
        const VoronoiFace& f = t.faces[fi];
        g.adj[static_cast<std::size_t>(f.a)].push_back({f.b, static_cast<int>(fi)});
        g.adj[static_cast<std::size_t>(f.b)].push_back({f.a, static_cast<int>(fi)});
    }
    return g;
}

namespace {

struct HeapItem {
    double dist;
    int cell;
    bool operator>(const HeapItem& o) const {
        return dist != o.dist ? dist > o.dist : cell > o.cell;
    }
};

void check_cell_index(const Tessellation2D& t, int c, const char* what) {
    if (c < 0 || static_cast<std::size_t>(c) >= t.cells.size())
        throw invalid_parameter(std::string(what) + ": cell index out of range");
}

} // namespace

PassageResult tess_passage_time(const Tessellation2D& t, const MarkedGraph& g,
                                int from_cell, int to_cell) {
    check_cell_index(t, from_cell, "tess_passage_time");
    check_cell_index(t, to_cell, "tess_passage_time");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(t.cells.size(), inf);
    std::vector<int> hops(t.cells.size(), 0);
    std::vector<char> settled(t.cells.size(), 0);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> pq;

    dist[static_cast<std::size_t>(from_cell)] = 0.0;
    pq.push({0.0, from_cell});
    double min_margin_dist = inf;

    PassageResult out;
    while (!pq.empty()) {
        auto [d, c] = pq.top();
        pq.pop();
        auto ci = static_cast<std::size_t>(c);
        if (settled[ci]) continue;
        settled[ci] = 1;
        if (c == to_cell) {
            out.time = d;
            out.hops = hops[ci];
            // a margin cell strictly closer than the target leaves room for a
            // shorter path through the unseen outside region
            out.censored = min_margin_dist < d;
            return out;
        }
        if (t.cells[ci].touches_margin)
            min_margin_dist = std::min(min_margin_dist, d);
        for (auto [nb, fi] : g.adj[ci]) {
            double nd = d + g.face_mark[static_cast<std::size_t>(fi)];
            auto ni = static_cast<std::size_t>(nb);
            if (nd < dist[ni]) {
                dist[ni] = nd;
                hops[ni] = hops[ci] + 1;
                pq.push({nd, nb});
            }
        }
    }
    out.reachable = false;
    out.censored = true;
    out.time = inf;
    return out;
}

std::vector<double> tess_distances(const Tessellation2D& t, const MarkedGraph& g,
                                   int from_cell) {
    check_cell_index(t, from_cell, "tess_distances");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(t.cells.size(), inf);
    std::vector<char> settled(t.cells.size(), 0);
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> pq;
    dist[static_cast<std::size_t>(from_cell)] = 0.0;
    pq.push({0.0, from_cell});
    while (!pq.empty()) {
        auto [d, c] = pq.top();
        pq.pop();
        auto ci = static_cast<std::size_t>(c);
        if (settled[ci]) continue;
        settled[ci] = 1;
        for (auto [nb, fi] : g.adj[ci]) {
            double nd = d + g.face_mark[static_cast<std::size_t>(fi)];
            auto ni = static_cast<std::size_t>(nb);
            if (nd < dist[ni]) {
                dist[ni] = nd;
                pq.push({nd, nb});
            }
        }
    }
    return dist;
}

std::vector<int> hop_distances(const Tessellation2D& t, int from_cell) {
    check_cell_index(t, from_cell, "hop_distances");
    std::vector<int> dist(t.cells.size(), -1);
    std::vector<int> queue{from_cell};
    dist[static_cast<std::size_t>(from_cell)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int c = queue[head];
        for (int nb : t.cells[static_cast<std::size_t>(c)].neighbors) {
            auto ni = static_cast<std::size_t>(nb);
            if (dist[ni] >= 0) continue;
            dist[ni] = dist[static_cast<std::size_t>(c)] + 1;
            queue.push_back(nb);
        }
    }
    return dist;
}

std::vector<TimeConstantRow> time_constant_estimate(
    double lambda, const MarkDistribution& marks, Pt u,
    const std::vector<double>& r_list, long n_reps, std::uint64_t seed,
    double R_gen, double R_safe, int threads) {
    if (r_list.empty())
        throw invalid_parameter("time_constant_estimate: empty radius list");
    if (n_reps < 1)
        throw invalid_parameter("time_constant_estimate: n_reps must be >= 1");
    double un = std::sqrt(u.x * u.x + u.y * u.y);
    if (std::abs(un - 1.0) > 1e-9)
        throw invalid_parameter("time_constant_estimate: u must be a unit vector");
    double rmax = *std::max_element(r_list.begin(), r_list.end());
    if (rmax > R_safe)
        throw invalid_parameter(
            "time_constant_estimate: largest radius exceeds the safe window");

    std::size_t nr = r_list.size();
    auto reps = static_cast<std::size_t>(n_reps);
    std::vector<double> tau(reps * nr, 0.0);
    std::vector<char> cens(reps * nr, 0);

    parallel_for(reps, threads, [&](std::size_t rep) {
        std::uint64_t rep_seed = substream_seed(seed, rep);
        Tessellation2D t = sample_voronoi(lambda, R_gen, R_safe, rep_seed);
        MarkedGraph g = assign_marks(t, marks, splitmix64(rep_seed ^ 0x6d61726b73ULL));
        int src = cell_at(t, {0.0, 0.0});
        for (std::size_t ri = 0; ri < nr; ++ri) {
            double r = r_list[ri];
            int dst = cell_at(t, {r * u.x, r * u.y});
            PassageResult pr = tess_passage_time(t, g, src, dst);
            tau[rep * nr + ri] = pr.reachable ? pr.time : 0.0;
            cens[rep * nr + ri] = static_cast<char>(pr.censored || !pr.reachable);
        }
    });

    std::vector<TimeConstantRow> rows(nr);
    for (std::size_t ri = 0; ri < nr; ++ri) {
        TimeConstantRow& row = rows[ri];
        row.r = r_list[ri];
        double sum = 0.0, sum2 = 0.0;
        long used = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            if (cens[rep * nr + ri]) {
                ++row.n_censored;
                continue;
            }
            double v = tau[rep * nr + ri];
            sum += v;
            sum2 += v * v;
            ++used;
        }
        row.n_reps = used;
        if (used > 0) row.mean = sum / static_cast<double>(used);
        if (used > 1) {
            double var = (sum2 - sum * sum / static_cast<double>(used)) /
                         static_cast<double>(used - 1);
            row.stderr_mean = std::sqrt(std::max(var, 0.0) / static_cast<double>(used));
        }
    }
    return rows;
}

std::vector<int> cells_meeting_box(const Tessellation2D& t, const Box& box) {
    double corner = std::max({std::abs(box.xlo), std::abs(box.xhi),
                              std::abs(box.ylo), std::abs(box.yhi)});
    if (corner * std::sqrt(2.0) > t.R_safe)
        throw out_of_window("cells_meeting_box: box leaves the safe window");
    std::vector<int> hits;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        const VoronoiCell& c = t.cells[i];
        if (!c.complete) continue;
        if (convex_polygon_meets_box(c.poly, box)) hits.push_back(static_cast<int>(i));
    }
    return hits;
}

} // namespace fpptess
