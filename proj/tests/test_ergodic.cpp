#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fpptess/ergodic.hpp"
#include "fpptess/errors.hpp"
#include "fpptess/voronoi.hpp"

using namespace fpptess;

namespace {

Tessellation2D fixture_tess(double lambda = 1.0, double R_gen = 24.0,
                            double R_safe = 16.0, std::uint64_t seed = 404) {
    return sample_voronoi(lambda, R_gen, R_safe, seed);
}

int origin_cell(const Tessellation2D& t) { return cell_at(t, {0.0, 0.0}); }

} // namespace

TEST_CASE("standard functional registry") {
    auto fs = standard_functionals();
    REQUIRE(fs.size() == 4);
    CHECK(fs[0].name == "constant");
    CHECK(fs[1].name == "area");
    CHECK(fs[2].name == "perimeter");
    CHECK(fs[3].name == "neighbors");
    for (const auto& f : fs) CHECK(f.translation_invariant);

    Tessellation2D t = fixture_tess();
    int c = origin_cell(t);
    const VoronoiCell& cell = t.cells[static_cast<std::size_t>(c)];
    REQUIRE(cell.complete);
    CHECK(fs[0].eval(cell, t) == 1.0);
    CHECK(fs[1].eval(cell, t) == cell.area);
    CHECK(fs[2].eval(cell, t) == cell.perimeter);
    CHECK(fs[3].eval(cell, t) == static_cast<double>(cell.neighbors.size()));
}

TEST_CASE("ball_average of the constant functional is 1") {
    Tessellation2D t = fixture_tess();
    for (int n : {0, 2, 5}) {
        GraphBall b = graph_ball(t, origin_cell(t), n);
        REQUIRE(!b.members.empty());
        CHECK(ball_average(t, b, functional_constant()) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("ball_average matches a hand mean") {
    Tessellation2D t = fixture_tess();
    GraphBall b = graph_ball(t, origin_cell(t), 3);
    double acc = 0.0;
    for (int id : b.members) acc += t.cells[static_cast<std::size_t>(id)].area;
    double want = acc / static_cast<double>(b.members.size());
    CHECK(ball_average(t, b, functional_area()) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("ball_sample internal consistency") {
    Tessellation2D t = fixture_tess(1.0, 30.0, 22.0, 777);
    int c = origin_cell(t);
    for (int n : {0, 1, 4, 7}) {
        BallSample s = ball_sample(t, n);
        GraphBall b = graph_ball(t, c, n);
        CHECK(s.size == static_cast<long>(b.members.size()));
        CHECK(s.censored == b.touched_boundary);

        double area_sum = 0.0, perim_sum = 0.0, nb_sum = 0.0;
        for (int id : b.members) {
            const VoronoiCell& cell = t.cells[static_cast<std::size_t>(id)];
            area_sum += cell.area;
            perim_sum += cell.perimeter;
            nb_sum += static_cast<double>(cell.neighbors.size());
        }
        double k = static_cast<double>(b.members.size());
        CHECK(s.area == doctest::Approx(area_sum).epsilon(1e-12));
        CHECK(s.avg_area == doctest::Approx(area_sum / k).epsilon(1e-12));
        CHECK(s.avg_perimeter == doctest::Approx(perim_sum / k).epsilon(1e-12));
        CHECK(s.avg_neighbors == doctest::Approx(nb_sum / k).epsilon(1e-12));
    }

    // n = 0 is just the zero cell
    BallSample s0 = ball_sample(t, 0);
    CHECK(s0.size == 1);
    CHECK(s0.avg_area == doctest::Approx(t.cells[static_cast<std::size_t>(c)].area).epsilon(1e-12));
}

TEST_CASE("cell intensity estimate recovers lambda") {
    // E[1/Vol(zero cell)] = lambda for a stationary PVT.
    IntensityEstimate est = cell_intensity_estimate(1.0, 8.0, 600, 2024);
    CHECK(est.n_used == 600);
    CHECK(est.n_censored == 0);  // window sized so the zero cell never touches margin
    CHECK(est.stderr_mean > 0.0);
    CHECK(est.stderr_mean < 0.05);
    CHECK(std::abs(est.mean - 1.0) <= 5.0 * est.stderr_mean);
    CHECK(std::abs(est.mean - 1.0) < 0.12);
}

TEST_CASE("cell intensity scales with lambda") {
    IntensityEstimate est = cell_intensity_estimate(4.0, 4.0, 600, 55);
    CHECK(est.n_censored == 0);
    CHECK(std::abs(est.mean - 4.0) <= 5.0 * est.stderr_mean);
    CHECK(std::abs(est.mean - 4.0) < 0.5);
}

TEST_CASE("cell intensity rejects undersized windows") {
    CHECK_THROWS_AS(cell_intensity_estimate(1.0, 7.5, 10, 1), invalid_parameter);
    CHECK_THROWS_AS(cell_intensity_estimate(0.0, 8.0, 10, 1), invalid_parameter);
    CHECK_THROWS_AS(cell_intensity_estimate(1.0, 8.0, 0, 1), invalid_parameter);
}

TEST_CASE("palm oracle: constant functional is exact") {
    PalmEstimate p = palm_oracle(1.0, 10.0, 40, functional_constant(), 9);
    CHECK(p.mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.stderr_mean == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.n_seeds == 40);
    CHECK(p.n_cells > 10);  // roughly lambda per unit box per seed
}

TEST_CASE("palm oracle: typical cell area and neighbor count") {
    // E0[area] = 1/lambda, E0[#neighbors] = 6 for a planar PVT.
    PalmEstimate area = palm_oracle(1.0, 10.0, 300, functional_area(), 31337);
    CHECK(area.n_cells > 150);
    CHECK(area.stderr_mean > 0.0);
    CHECK(std::abs(area.mean - 1.0) <= std::max(4.0 * area.stderr_mean, 0.05));

    PalmEstimate nb = palm_oracle(1.0, 10.0, 300, functional_neighbor_count(), 31337);
    CHECK(std::abs(nb.mean - 6.0) <= std::max(4.0 * nb.stderr_mean, 0.12));
}

TEST_CASE("palm oracle under rescaling") {
    // At lambda = 4 the typical cell area is 1/4.
    PalmEstimate area = palm_oracle(4.0, 6.0, 250, functional_area(), 808);
    CHECK(area.n_cells > 500);
    CHECK(std::abs(area.mean - 0.25) <= std::max(4.0 * area.stderr_mean, 0.015));
}

TEST_CASE("intensity times typical area is 1") {
    IntensityEstimate inten = cell_intensity_estimate(2.0, 8.0 / std::sqrt(2.0), 500, 123);
    PalmEstimate area = palm_oracle(2.0, 2.0 + 8.0 / std::sqrt(2.0), 300, functional_area(), 123);
    double prod = inten.mean * area.mean;
    // independent 2-3% errors each; allow a generous joint band
    CHECK(std::abs(prod - 1.0) < 0.12);
}

TEST_CASE("palm oracle precondition checks") {
    CHECK_THROWS_AS(palm_oracle(1.0, 9.5, 10, functional_area(), 1), invalid_parameter);
    CHECK_THROWS_AS(palm_oracle(1.0, 10.0, 0, functional_area(), 1), invalid_parameter);
    CHECK_THROWS_AS(palm_oracle(-1.0, 10.0, 10, functional_area(), 1), invalid_parameter);
}

TEST_CASE("ball growth series") {
    ErgodicSeries s = ball_growth_series(1.0, 10, 40, 6060);
    REQUIRE(s.n.size() == 11);
    REQUIRE(s.mean_size.size() == 11);
    REQUIRE(s.mean_area.size() == 11);
    REQUIRE(s.ratio_mean.size() == 11);
    REQUIRE(s.ratio_stderr.size() == 11);
    REQUIRE(s.censored.size() == 11);
    CHECK(s.n_seeds == 40);
    for (int i = 0; i <= 10; ++i) CHECK(s.n[static_cast<std::size_t>(i)] == i);

    CHECK(s.mean_size[0] == doctest::Approx(1.0));  // the zero cell alone
    for (std::size_t i = 1; i < s.mean_size.size(); ++i) {
        CHECK(s.mean_size[i] > s.mean_size[i - 1]);
        CHECK(s.mean_area[i] > s.mean_area[i - 1]);
    }
    // windows are sized internally so censoring at n_max stays rare
    for (long c : s.censored) CHECK(c <= 2);

    // size/area estimates the cell intensity; loose band at small n
    std::size_t last = s.ratio_mean.size() - 1;
    CHECK(std::abs(s.ratio_mean[last] - 1.0) <=
          4.0 * s.ratio_stderr[last] + 0.10);
}

TEST_CASE("ball_window_radius grows with n and shrinks with lambda") {
    CHECK(ball_window_radius(1.0, 10) < ball_window_radius(1.0, 30));
    CHECK(ball_window_radius(4.0, 10) < ball_window_radius(1.0, 10));
    CHECK(ball_window_radius(1.0, 30) > 30.0 * 1.35);  // beyond the observed reach
}

TEST_CASE("disk_average partition identity") {
    Tessellation2D t = fixture_tess(1.0, 26.0, 18.0, 99);
    for (double R : {3.0, 9.0, 18.0}) {
        CHECK(disk_average(t, R, functional_constant()) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("disk_average of 1/area estimates lambda") {
    CellFunctional inv_area{
        "inv_area",
        [](const VoronoiCell& c, const Tessellation2D&) { return 1.0 / c.area; },
        true};
    double acc = 0.0;
    const int n_seeds = 30;
    for (int s = 0; s < n_seeds; ++s) {
        Tessellation2D t = sample_voronoi(1.0, 24.0, 16.0, 5000 + static_cast<std::uint64_t>(s));
        acc += disk_average(t, 16.0, inv_area);
    }
    double mean = acc / n_seeds;
    CHECK(std::abs(mean - 1.0) < 0.06);
}

TEST_CASE("disk_average window checks") {
    Tessellation2D t = fixture_tess();
    CHECK_THROWS_AS(disk_average(t, t.R_safe + 0.5, functional_constant()), out_of_window);
    CHECK_THROWS_AS(disk_average(t, 0.0, functional_constant()), invalid_parameter);
}
