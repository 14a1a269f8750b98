#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>

#include "fpptess/errors.hpp"
#include "fpptess/hyperplane.hpp"
#include "fpptess/rng.hpp"

using namespace fpptess;

namespace {

PhtSample three_plane_sample() {
    PhtSample s;
    s.gamma = 1.0;
    s.R = 10.0;
    s.d = 2;
    double c = std::sqrt(0.5);
    s.planes = {{{1.0, 0.0}, 0.5, 1.0},
                {{0.0, 1.0}, 0.25, 2.0},
                {{c, c}, 0.7, 1.5}};
    return s;
}

} // namespace

TEST_CASE("segment_crosses: half-open convention") {
    CHECK(segment_crosses(0.0, 1.0));    // plane through x counts
    CHECK(segment_crosses(0.0, -1.0));
    CHECK(!segment_crosses(1.0, 0.0));   // plane through y does not
    CHECK(!segment_crosses(-1.0, 0.0));
    CHECK(segment_crosses(-1.0, 2.0));
    CHECK(segment_crosses(3.0, -0.5));
    CHECK(!segment_crosses(1.0, 2.0));
    CHECK(!segment_crosses(-1.0, -2.0));
}

TEST_CASE("sample_pht: determinism and recorded window") {
    auto phi = make_isotropic(2);
    auto marks = make_exponential(1.0);
    PhtSample a = sample_pht(M_PI, phi, 10.0, marks, 42);
    PhtSample b = sample_pht(M_PI, phi, 10.0, marks, 42);
    REQUIRE(a.planes.size() == b.planes.size());
    for (std::size_t i = 0; i < a.planes.size(); ++i) {
        CHECK(a.planes[i].u == b.planes[i].u);
        CHECK(a.planes[i].r == b.planes[i].r);
        CHECK(a.planes[i].mark == b.planes[i].mark);
    }
    CHECK(a.gamma == M_PI);
    CHECK(a.R == 10.0);
    CHECK(a.d == 2);
    CHECK(a.seed == 42);
    CHECK(!a.phi_spec.empty());
    CHECK(!a.mark_spec.empty());

    // a different seed must change the draw (counts may tie, contents not)
    PhtSample c = sample_pht(M_PI, phi, 10.0, marks, 43);
    bool same = c.planes.size() == a.planes.size();
    for (std::size_t i = 0; same && i < a.planes.size(); ++i)
        same = c.planes[i].u == a.planes[i].u && c.planes[i].r == a.planes[i].r;
    CHECK(!same);

    for (const Hyperplane& h : a.planes) {
        CHECK(std::abs(norm(h.u) - 1.0) <= 1e-12);
        CHECK(h.r >= 0.0);
        CHECK(h.r <= 10.0);
        CHECK(h.mark >= 0.0);
    }

    CHECK_THROWS_AS(sample_pht(0.0, phi, 10.0, marks, 1), invalid_parameter);
}

TEST_CASE("plane count follows Poisson(gamma R)") {
    auto phi = make_isotropic(2);
    auto marks = make_deterministic(1.0);
    double gamma = M_PI, R = 10.0;
    long n = 2000;
    double s1 = 0, s2 = 0;
    for (long i = 0; i < n; ++i) {
        double k = static_cast<double>(sample_pht(gamma, phi, R, marks, 1000 + i).planes.size());
        s1 += k;
        s2 += k * k;
    }
    double mean = s1 / n;
    double var = (s2 - n * mean * mean) / (n - 1);
    double expect = gamma * R;
    CHECK(std::abs(mean - expect) <= 5.0 * std::sqrt(expect / n));
    // Poisson: variance equals the mean
    CHECK(std::abs(var - expect) <= 0.15 * expect);
}

TEST_CASE("crossing_count: hand-checked sample with boundary contacts") {
    PhtSample s = three_plane_sample();
    Vec x{0.0, 0.0}, z{0.5, 0.0}, y{1.0, 0.0};
    // z lies exactly on the first plane: [x,z) excludes it, [z,y) includes it
    CHECK(crossing_count(s, x, y) == 2);
    CHECK(crossing_count(s, x, z) == 0);
    CHECK(crossing_count(s, z, y) == 2);
    // reversed orientation crosses the same interior planes
    CHECK(crossing_count(s, y, x) == 2);

    CHECK_THROWS_AS(crossing_count(s, {11.0, 0.0}, {0.0, 0.0}), out_of_window);
    CHECK_THROWS_AS(crossing_count(s, {0.0, 0.0}, {0.0, 11.0}), out_of_window);
}

TEST_CASE("crossing counts are additive along a segment") {
    auto phi = make_isotropic(2);
    auto marks = make_deterministic(1.0);
    PhtSample s = sample_pht(4.0, phi, 8.0, marks, 7);
    RandomStream rng(84);
    for (int it = 0; it < 500; ++it) {
        Vec x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Vec y{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        double t = rng.uniform(0.05, 0.95);
        Vec z = add(x, scale(t, sub(y, x)));
        CHECK(crossing_count(s, x, y) ==
              crossing_count(s, x, z) + crossing_count(s, z, y));
    }
}

TEST_CASE("expected_crossings matches the sampled process") {
    auto phi = make_isotropic(2);
    auto marks = make_deterministic(1.0);
    double gamma = 2.5;
    Vec x{3.0, 4.0};
    double lam = expected_crossings(gamma, *phi, x);
    CHECK(lam == doctest::Approx(2.5 * 5.0 / M_PI).epsilon(1e-12));

    Vec origin{0.0, 0.0};
    long n = 3000;
    double s1 = 0;
    for (long i = 0; i < n; ++i) {
        PhtSample s = sample_pht(gamma, phi, 5.0, marks, 2000 + i);
        s1 += static_cast<double>(crossing_count(s, origin, x));
    }
    double mean = s1 / n;
    CHECK(std::abs(mean - lam) <= 5.0 * std::sqrt(lam / n));
}

TEST_CASE("compound_poisson_stats closed forms") {
    auto ex = make_exponential(1.0);
    auto cp = compound_poisson_stats(3.0, *ex);
    CHECK(cp.mean == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cp.variance == doctest::Approx(6.0).epsilon(1e-12));

    auto det2 = make_deterministic(2.0);
    auto cp2 = compound_poisson_stats(2.0, *det2);
    CHECK(cp2.mean == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(cp2.variance == doctest::Approx(8.0).epsilon(1e-12));

    auto zm = make_zero_atom_mix(0.5, make_deterministic(2.0));
    auto cp3 = compound_poisson_stats(5.0, *zm);
    CHECK(cp3.mean == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(cp3.variance == doctest::Approx(10.0).epsilon(1e-12));

    CHECK_THROWS_AS(compound_poisson_stats(-1.0, *ex), invalid_parameter);
}

TEST_CASE("jsonl round trip preserves every plane bit for bit") {
    auto phi = parse_directional("atoms:1,0:0.5;0,1:0.5", 2);
    auto marks = make_uniform(0.0, 2.0);
    PhtSample s = sample_pht(3.0, phi, 6.0, marks, 99);

    std::string path = "/tmp/fpptess_test_pht_roundtrip.jsonl";
    save_pht_jsonl(s, path);
    PhtSample t = load_pht_jsonl(path);
    std::remove(path.c_str());

    CHECK(t.gamma == s.gamma);
    CHECK(t.R == s.R);
    CHECK(t.seed == s.seed);
    CHECK(t.d == s.d);
    CHECK(t.phi_spec == s.phi_spec);
    CHECK(t.mark_spec == s.mark_spec);
    REQUIRE(t.planes.size() == s.planes.size());
    for (std::size_t i = 0; i < s.planes.size(); ++i) {
        CHECK(t.planes[i].u == s.planes[i].u);
        CHECK(t.planes[i].r == s.planes[i].r);
        CHECK(t.planes[i].mark == s.planes[i].mark);
    }

    CHECK_THROWS_AS(load_pht_jsonl("/tmp/fpptess_no_such_file.jsonl"), io_failure);
}
