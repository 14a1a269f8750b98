#include "fpptess/tameness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <tuple>

#include "fpptess/errors.hpp"

namespace fpptess {

namespace {

void check_grid(double delta, int box) {
    if (!(delta > 0.0)) throw invalid_parameter("grid field: delta must be > 0");
    if (box < 0) throw invalid_parameter("grid field: box must be >= 0");
}

void check_window(const Tessellation2D& t, double delta, int box, const char* what) {
    double reach = delta * (static_cast<double>(box) + 2.0) * std::sqrt(2.0);
    if (reach > t.R_safe)
        throw out_of_window(std::string(what) + ": grid leaves the safe window");
}

Box site_box(double delta, int vx, int vy) {
    return {delta * (vx - 0.5), delta * (vy - 0.5), delta * (vx + 0.5),
            delta * (vy + 0.5)};
}

Box block3(double delta, int vx, int vy) {
    return {delta * (vx - 1.5), delta * (vy - 1.5), delta * (vx + 1.5),
            delta * (vy + 1.5)};
}

// sites whose block could meet the polygon, by bounding box
struct SiteRange {
    int xlo, xhi, ylo, yhi;
    bool empty;
};

SiteRange candidate_sites(const Polygon& poly, double delta, int box) {
    double xlo = HUGE_VAL, xhi = -HUGE_VAL, ylo = HUGE_VAL, yhi = -HUGE_VAL;
    for (const Pt& p : poly) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    SiteRange r{};
    r.xlo = std::max(-box, static_cast<int>(std::floor(xlo / delta + 0.5)));
    r.xhi = std::min(box, static_cast<int>(std::floor(xhi / delta + 0.5)));
    r.ylo = std::max(-box, static_cast<int>(std::floor(ylo / delta + 0.5)));
    r.yhi = std::min(box, static_cast<int>(std::floor(yhi / delta + 0.5)));
    r.empty = r.xlo > r.xhi || r.ylo > r.yhi;
    return r;
}

void check_complete_cells(const Tessellation2D& t, double delta, int box,
                          const char* what) {
    // an incomplete cell near the grid would silently corrupt the fields
    double guard = delta * (static_cast<double>(box) + 2.0) * std::sqrt(2.0) +
                   6.0 / std::sqrt(t.lambda);
    for (const VoronoiCell& c : t.cells)
        if (!c.complete && pt_norm(c.generator) < guard)
            throw construction_unsafe(std::string(what) +
                                      ": incomplete cell near the grid");
}

} // namespace

TamenessFields compute_fields(const Tessellation2D& t, double delta, int box) {
    check_grid(delta, box);
    check_window(t, delta, box, "compute_fields");
    check_complete_cells(t, delta, box, "compute_fields");

    TamenessFields out;
    out.Y.delta = out.U.delta = delta;
    out.Y.box = out.U.box = box;
    std::size_t nsites = static_cast<std::size_t>(out.Y.side()) *
                         static_cast<std::size_t>(out.Y.side());
    out.Y.values.assign(nsites, 0.0);
    out.U.values.assign(nsites, 0.0);

    for (const VoronoiCell& c : t.cells) {
        int vx = static_cast<int>(std::floor(c.generator.x / delta + 0.5));
        int vy = static_cast<int>(std::floor(c.generator.y / delta + 0.5));
        if (std::abs(vx) <= box && std::abs(vy) <= box) out.Y.at(vx, vy) += 1.0;
    }

    for (const VoronoiCell& c : t.cells) {
        if (!c.complete) continue;
        SiteRange r = candidate_sites(c.poly, delta, box);
        if (r.empty) continue;
        for (int vx = r.xlo; vx <= r.xhi; ++vx)
            for (int vy = r.ylo; vy <= r.yhi; ++vy) {
                if (out.U.at(vx, vy) != 0.0) continue;
                if (!convex_polygon_meets_box(c.poly, site_box(delta, vx, vy)))
                    continue;
                if (!polygon_inside_box(c.poly, block3(delta, vx, vy)))
                    out.U.at(vx, vy) = 1.0;
            }
    }
    return out;
}

GridField compute_W_voronoi(const Tessellation2D& t, const MarkedGraph& g,
                            double delta, double rho, int box) {
    check_grid(delta, box);
    if (rho < 0.0) throw invalid_parameter("compute_W: rho must be >= 0");
    check_window(t, delta, box, "compute_W");
    check_complete_cells(t, delta, box, "compute_W");

    GridField W;
    W.delta = delta;
    W.box = box;
    std::size_t nsites =
        static_cast<std::size_t>(W.side()) * static_cast<std::size_t>(W.side());
    W.values.assign(nsites, 0.0);

    // per-site source cells (cells meeting v^square)
    std::vector<std::vector<int>> sources(nsites);
    for (std::size_t ci = 0; ci < t.cells.size(); ++ci) {
        const VoronoiCell& c = t.cells[ci];
        if (!c.complete) continue;
        SiteRange r = candidate_sites(c.poly, delta, box);
        if (r.empty) continue;
        for (int vx = r.xlo; vx <= r.xhi; ++vx)
            for (int vy = r.ylo; vy <= r.yhi; ++vy)
                if (convex_polygon_meets_box(c.poly, site_box(delta, vx, vy)))
                    sources[W.index(vx, vy)].push_back(static_cast<int>(ci));
    }

    std::vector<double> dist(t.cells.size(), 0.0);
    std::vector<int> stamp(t.cells.size(), -1);
    std::vector<char> settled(t.cells.size(), 0);
    std::vector<int> stamp2(t.cells.size(), -1);

    using Item = std::pair<double, int>;
    for (int vx = -box; vx <= box; ++vx)
        for (int vy = -box; vy <= box; ++vy) {
            int site = static_cast<int>(W.index(vx, vy));
            if (rho == 0.0) continue;  // passage times are >= 0
            Box blk = block3(delta, vx, vy);
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            for (int src : sources[static_cast<std::size_t>(site)]) {
                dist[static_cast<std::size_t>(src)] = 0.0;
                stamp[static_cast<std::size_t>(src)] = site;
                pq.push({0.0, src});
            }
            double hit = -1.0;
            while (!pq.empty()) {
                auto [d, c] = pq.top();
                pq.pop();
                auto ci = static_cast<std::size_t>(c);
                if (d >= rho) break;
                if (stamp2[ci] == site && settled[ci]) continue;
                stamp2[ci] = site;
                settled[ci] = 1;
                if (!polygon_inside_box(t.cells[ci].poly, blk)) {
                    hit = d;
                    break;
                }
                for (auto [nb, fi] : g.adj[ci]) {
                    double nd = d + g.face_mark[static_cast<std::size_t>(fi)];
                    auto ni = static_cast<std::size_t>(nb);
                    if (stamp[ni] != site || nd < dist[ni]) {
                        stamp[ni] = site;
                        dist[ni] = nd;
                        pq.push({nd, nb});
                    }
                }
            }
            if (hit >= 0.0) W.values[static_cast<std::size_t>(site)] = 1.0;
        }
    return W;
}

GridField compute_W_pht(const PhtSample& s, double delta, double rho, int box,
                        int pixels) {
    check_grid(delta, box);
    if (rho < 0.0) throw invalid_parameter("compute_W: rho must be >= 0");
    if (pixels < 2) throw invalid_parameter("compute_W: pixels must be >= 2");
    if (s.d != 2) throw invalid_parameter("compute_W: planar samples only");
    double extent = delta * (static_cast<double>(box) + 1.5);
    if (extent * std::sqrt(2.0) > s.R)
        throw out_of_window("compute_W: grid leaves the sample window");

    GridField W;
    W.delta = delta;
    W.box = box;
    W.values.assign(static_cast<std::size_t>(W.side()) *
                        static_cast<std::size_t>(W.side()),
                    0.0);
    if (rho == 0.0) return W;

    const int S = (2 * box + 3) * pixels;  // pixel columns/rows
    const double h = delta / pixels;
    auto center = [&](int i) { return -extent + (i + 0.5) * h; };

    // accumulate plane marks on the crossed pixel-graph edges; each plane
    // crosses at most one horizontal edge per row (linear signed value)
    std::vector<double> wh(static_cast<std::size_t>(S - 1) * S, 0.0);  // (i,j)-(i+1,j)
    std::vector<double> wv(static_cast<std::size_t>(S) * (S - 1), 0.0);  // (i,j)-(i,j+1)
    auto hidx = [&](int i, int j) {
        return static_cast<std::size_t>(j) * (S - 1) + static_cast<std::size_t>(i);
    };
    auto vidx = [&](int i, int j) {
        return static_cast<std::size_t>(j) * S + static_cast<std::size_t>(i);
    };

    for (const Hyperplane& pl : s.planes) {
        double ux = pl.u[0], uy = pl.u[1], r = pl.r;
        auto sval = [&](int i, int j) { return ux * center(i) + uy * center(j) - r; };
        if (ux != 0.0) {
            for (int j = 0; j < S; ++j) {
                double t = (r - uy * center(j)) / ux;          // crossing abscissa
                int ic = static_cast<int>(std::floor((t + extent) / h - 0.5));
                for (int i = std::max(0, ic - 1); i <= std::min(S - 2, ic + 1); ++i)
                    if (segment_crosses(sval(i, j), sval(i + 1, j)))
                        wh[hidx(i, j)] += pl.mark;
            }
        } else {
            for (int j = 0; j < S; ++j)
                if (sval(0, j) == 0.0)  // row lies on the plane
                    for (int i = 0; i < S - 1; ++i) wh[hidx(i, j)] += pl.mark;
        }
        if (uy != 0.0) {
            for (int i = 0; i < S; ++i) {
                double t = (r - ux * center(i)) / uy;
                int jc = static_cast<int>(std::floor((t + extent) / h - 0.5));
                for (int j = std::max(0, jc - 1); j <= std::min(S - 2, jc + 1); ++j)
                    if (segment_crosses(sval(i, j), sval(i, j + 1)))
                        wv[vidx(i, j)] += pl.mark;
            }
        } else {
            for (int i = 0; i < S; ++i)
                if (sval(i, 0) == 0.0)
                    for (int j = 0; j < S - 1; ++j) wv[vidx(i, j)] += pl.mark;
        }
    }

    std::size_t npix = static_cast<std::size_t>(S) * S;
    std::vector<double> dist(npix, 0.0);
    std::vector<int> stamp(npix, -1);
    std::vector<char> settled(npix, 0);
    std::vector<int> stamp2(npix, -1);
    auto pix = [&](int i, int j) {
        return static_cast<std::size_t>(j) * S + static_cast<std::size_t>(i);
    };

    using Item = std::pair<double, std::size_t>;
    for (int vx = -box; vx <= box; ++vx)
        for (int vy = -box; vy <= box; ++vy) {
            int site = static_cast<int>(W.index(vx, vy));
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            int c0 = (vx + box + 1) * pixels, r0 = (vy + box + 1) * pixels;
            for (int i = c0; i < c0 + pixels; ++i)
                for (int j = r0; j < r0 + pixels; ++j) {
                    std::size_t p = pix(i, j);
                    dist[p] = 0.0;
                    stamp[p] = site;
                    pq.push({0.0, p});
                }
            int blo_c = (vx + box) * pixels, bhi_c = (vx + box + 3) * pixels - 1;
            int blo_r = (vy + box) * pixels, bhi_r = (vy + box + 3) * pixels - 1;
            double hit = -1.0;
            while (!pq.empty()) {
                auto [d, p] = pq.top();
                pq.pop();
                if (d >= rho) break;
                if (stamp2[p] == site && settled[p]) continue;
                stamp2[p] = static_cast<int>(site);
                settled[p] = 1;
                int i = static_cast<int>(p % static_cast<std::size_t>(S));
                int j = static_cast<int>(p / static_cast<std::size_t>(S));
                if (i < blo_c || i > bhi_c || j < blo_r || j > bhi_r) {
                    hit = d;
                    break;
                }
                auto relax = [&](int ni, int nj, double w) {
                    if (ni < 0 || ni >= S || nj < 0 || nj >= S) return;
                    std::size_t q = pix(ni, nj);
                    double nd = d + w;
                    if (stamp[q] != site || nd < dist[q]) {
                        stamp[q] = site;
                        dist[q] = nd;
                        pq.push({nd, q});
                    }
                };
                if (i + 1 < S) relax(i + 1, j, wh[hidx(i, j)]);
                if (i > 0) relax(i - 1, j, wh[hidx(i - 1, j)]);
                if (j + 1 < S) relax(i, j + 1, wv[vidx(i, j)]);
                if (j > 0) relax(i, j - 1, wv[vidx(i, j - 1)]);
            }
            if (hit >= 0.0) W.values[static_cast<std::size_t>(site)] = 1.0;
        }
    return W;
}

AnimalStat greedy_animal_max(const GridField& f, long n, long n_restarts,
                             std::uint64_t seed) {
    long sites = static_cast<long>(f.side()) * static_cast<long>(f.side());
    if (n < 1) throw invalid_parameter("greedy_animal_max: n must be >= 1");
    if (n > sites)
        throw invalid_parameter("greedy_animal_max: n exceeds the site count");
    if (n_restarts < 0)
        throw invalid_parameter("greedy_animal_max: n_restarts must be >= 0");

    const int B = f.box;
    auto run = [&](RandomStream* rng) {
        std::vector<char> status(static_cast<std::size_t>(sites), 0);  // 1 frontier, 2 taken
        // ordered by (-value, vx, vy): begin() is the best site
        std::set<std::tuple<double, int, int>> frontier;
        std::vector<std::pair<int, int>> pool;

        double sum = 0.0;
        long size = 0;
        auto take = [&](int vx, int vy) {
            status[f.index(vx, vy)] = 2;
            sum += f.at(vx, vy);
            ++size;
            const int dx[4] = {1, -1, 0, 0};
            const int dy[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int nx = vx + dx[k], ny = vy + dy[k];
                if (std::abs(nx) > B || std::abs(ny) > B) continue;
                if (status[f.index(nx, ny)] != 0) continue;
                status[f.index(nx, ny)] = 1;
                frontier.insert({-f.at(nx, ny), nx, ny});
                pool.push_back({nx, ny});
            }
        };
        take(0, 0);
        while (size < n) {
            int vx = 0, vy = 0;
            bool picked = false;
            if (rng != nullptr && rng->uniform01() < 0.25) {
                // randomized restart: occasionally take a uniform frontier site
                while (!pool.empty()) {
                    std::size_t k = rng->uniform_index(pool.size());
                    auto [px, py] = pool[k];
                    if (status[f.index(px, py)] != 1) {  // stale: taken already
                        pool[k] = pool.back();
                        pool.pop_back();
                        continue;
                    }
                    vx = px;
                    vy = py;
                    picked = true;
                    break;
                }
            }
            if (!picked) {
                auto it = frontier.begin();
                while (status[f.index(std::get<1>(*it), std::get<2>(*it))] != 1)
                    it = frontier.erase(it);
                vx = std::get<1>(*it);
                vy = std::get<2>(*it);
            }
            frontier.erase({-f.at(vx, vy), vx, vy});
            take(vx, vy);
        }
        return sum / static_cast<double>(n);
    };

    AnimalStat out;
    out.n = n;
    out.n_restarts = n_restarts;
    out.greedy_max_avg = run(nullptr);
    for (long r = 0; r < n_restarts; ++r) {
        RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(r));
        out.greedy_max_avg = std::max(out.greedy_max_avg, run(&rng));
    }
    return out;
}

namespace {

struct ExactAnimal {
    const GridField* f;
    long n;
    double best;
    std::vector<char> state;  // 0 fresh, 1 seen (frontier/banned), 2 taken
    std::vector<std::pair<int, int>> ext;

    void push_fresh_neighbors(int vx, int vy) {
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int nx = vx + dx[k], ny = vy + dy[k];
            if (std::abs(nx) > f->box || std::abs(ny) > f->box) continue;
            if (state[f->index(nx, ny)] != 0) continue;
            state[f->index(nx, ny)] = 1;
            ext.push_back({nx, ny});
        }
    }

    // enumerate every connected superset exactly once (extension-set scheme)
    void rec(double sum, long size, std::size_t lo) {
        if (size == n) {
            best = std::max(best, sum);
            return;
        }
        std::size_t hi = ext.size();
        for (std::size_t i = lo; i < hi; ++i) {
            auto [vx, vy] = ext[i];
            state[f->index(vx, vy)] = 2;
            std::size_t mark = ext.size();
            push_fresh_neighbors(vx, vy);
            rec(sum + f->at(vx, vy), size + 1, i + 1);
            while (ext.size() > mark) {
                auto [ux, uy] = ext.back();
                state[f->index(ux, uy)] = 0;
                ext.pop_back();
            }
            state[f->index(vx, vy)] = 1;  // banned for later branches here
        }
    }
};

} // namespace

double exact_animal_max(const GridField& f, long n) {
    long sites = static_cast<long>(f.side()) * static_cast<long>(f.side());
    if (n < 1) throw invalid_parameter("exact_animal_max: n must be >= 1");
    if (n > sites)
        throw invalid_parameter("exact_animal_max: n exceeds the site count");

    ExactAnimal ea;
    ea.f = &f;
    ea.n = n;
    ea.best = -std::numeric_limits<double>::infinity();
    ea.state.assign(static_cast<std::size_t>(sites), 0);
    ea.state[f.index(0, 0)] = 2;
    ea.push_fresh_neighbors(0, 0);
    ea.rec(f.at(0, 0), 1, 0);
    return ea.best / static_cast<double>(n);
}

} // namespace fpptess
