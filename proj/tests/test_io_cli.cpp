#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "fpptess/directional.hpp"
#include "fpptess/errors.hpp"
#include "fpptess/marks.hpp"
#include "fpptess/pht_fpp.hpp"
#include "fpptess/svg.hpp"
#include "fpptess/table.hpp"

using namespace fpptess;

namespace {

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/fpptess_cliXXXXXX";
        char* p = mkdtemp(tmpl);
        REQUIRE(p != nullptr);
        return std::string(p);
    }();
    return dir;
}

bool file_exists(const std::string& path) {
    struct stat st{};
    return stat(path.c_str(), &st) == 0;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// run the CLI binary; returns captured stdout, stores the exit code
std::string run_cli(const std::string& args, int& rc, const std::string& env = "") {
    std::string cmd = env;
    if (!cmd.empty()) cmd += " ";
    cmd += std::string(FPPTESS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[512];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, got);
    int st = pclose(p);
    rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("Table CSV layout is exact") {
    Table t({"a", "b", "c"});
    t.set_config({{"k", "v"}, {"n", "2"}});
    t.add_row({1.5, static_cast<long long>(2), std::string("x")});
    t.add_row({0.1, static_cast<long long>(-3), std::string("y z")});
    CHECK(t.n_rows() == 2);
    CHECK(t.to_csv(false) ==
          "# config: k=v n=2\n"
          "a,b,c\n"
          "1.5,2,x\n"
          "0.1,-3,y z\n");

    std::string ts = t.to_csv(true);
    CHECK(ts.rfind("# generated_at: ", 0) == 0);
    CHECK(ts.substr(ts.find('\n') + 1) == t.to_csv(false));
}

TEST_CASE("Table rejects ragged rows and unknown formats") {
    Table t({"a", "b"});
    CHECK_THROWS_AS(t.add_row({1.0}), invalid_parameter);
    CHECK_THROWS_AS(t.add_row({1.0, 2.0, 3.0}), invalid_parameter);
    t.add_row({1.0, 2.0});
    CHECK_THROWS_AS(t.write(scratch_dir() + "/bad.xml", "xml", false),
                    invalid_parameter);
    CHECK(!file_exists(scratch_dir() + "/bad.xml"));
}

TEST_CASE("Table JSON is parseable and typed") {
    Table t({"a", "b", "c"});
    t.set_config({{"k", "v"}});
    t.add_row({1.5, static_cast<long long>(7), std::string("x")});
    nlohmann::json j = nlohmann::json::parse(t.to_json(false));
    CHECK(j["config"]["k"] == "v");
    CHECK(j["columns"].size() == 3);
    CHECK(j["columns"][1] == "b");
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0][0] == 1.5);
    CHECK(j["rows"][0][1] == 7);
    CHECK(j["rows"][0][2] == "x");
    CHECK(!j.contains("generated_at"));
    nlohmann::json jt = nlohmann::json::parse(t.to_json(true));
    CHECK(jt.contains("generated_at"));
}

TEST_CASE("format_double uses up to 12 significant digits") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(1.0047766375690937e-08) == "1.00477663757e-08");
}

TEST_CASE("atomic_write_file leaves no temporaries") {
    std::string ok = scratch_dir() + "/atomic.txt";
    atomic_write_file(ok, "hello\n");
    CHECK(slurp(ok) == "hello\n");
    CHECK(!file_exists(ok + ".tmp"));

    std::string bad = "/nonexistent_fpptess_dir/out.txt";
    CHECK_THROWS_AS(atomic_write_file(bad, "x"), io_failure);
    CHECK(!file_exists(bad));
    CHECK(!file_exists(bad + ".tmp"));
}

TEST_CASE("emit_svg draws a shape and rejects empty ones") {
    TimeConstantModel m{M_PI, make_isotropic(2), parse_marks("det:1")};
    LimitShape shape = limit_shape(m, 48);
    std::string path = scratch_dir() + "/shape.svg";
    emit_svg(shape, path);
    std::string svg = slurp(path);
    CHECK(contains(svg, "<svg"));
    CHECK(contains(svg, "</svg>"));

    LimitShape empty;
    CHECK_THROWS_AS(emit_svg(empty, scratch_dir() + "/empty.svg"), io_failure);
    CHECK(!file_exists(scratch_dir() + "/empty.svg"));
    CHECK_THROWS_AS(emit_svg(shape, "/nonexistent_fpptess_dir/s.svg"), io_failure);
}

TEST_CASE("cli: poisson-tail prints the bound comparison") {
    int rc = -1;
    std::string out = run_cli("poisson-tail --lambda 1 --x 10 --side upper", rc);
    CHECK(rc == 0);
    CHECK(contains(out, "exact=1.00478e-08"));
    CHECK(contains(out, "VIOLATION=true"));

    out = run_cli("poisson-tail --lambda 2 --x 2 --side lower", rc);
    CHECK(rc == 0);
    CHECK(contains(out, "VIOLATION=false"));
    CHECK(contains(out, "exact=0.135335"));
}

TEST_CASE("cli: covering reports the measured size") {
    int rc = -1;
    std::string out = run_cli("covering --dim 2 --delta 0.5", rc);
    CHECK(rc == 0);
    CHECK(contains(out, "covering: d=2 delta=0.5 k=44"));
}

TEST_CASE("cli: parse errors exit with 2") {
    int rc = -1;
    run_cli("covering --bogus 1", rc);
    CHECK(rc == 2);
    run_cli("poisson-tail --lambda 1", rc);  // missing required options
    CHECK(rc == 2);
    run_cli("no-such-subcommand", rc);
    CHECK(rc == 2);
    run_cli("", rc);  // a subcommand is required
    CHECK(rc == 2);
}

TEST_CASE("cli: config errors exit with 2, io failures with 3") {
    int rc = -1;
    std::string out_csv = scratch_dir() + "/never.csv";
    run_cli("pht-shape --marks bogus:1 --out " + out_csv, rc);
    CHECK(rc == 2);
    CHECK(!file_exists(out_csv));

    run_cli("poisson-tail --lambda 1 --x 1 --side lower --out /nonexistent_fpptess_dir/t.csv",
            rc);
    CHECK(rc == 3);
}

TEST_CASE("cli: pht-shape is reproducible and exports json and svg") {
    int rc = -1;
    std::string a = scratch_dir() + "/shape_a.csv";
    std::string b = scratch_dir() + "/shape_b.csv";
    run_cli("pht-shape --dirs 32 --no-timestamp --out " + a, rc);
    CHECK(rc == 0);
    run_cli("pht-shape --dirs 32 --no-timestamp --out " + b, rc);
    CHECK(rc == 0);
    CHECK(slurp(a) == slurp(b));
    std::string csv = slurp(a);
    CHECK(csv.rfind("# config: subcommand=pht-shape", 0) == 0);
    CHECK(contains(csv, "ux,uy,radius"));

    std::string j = scratch_dir() + "/shape.json";
    std::string svg = scratch_dir() + "/shape_cli.svg";
    run_cli("pht-shape --dirs 32 --no-timestamp --format json --out " + j +
                " --svg " + svg,
            rc);
    CHECK(rc == 0);
    nlohmann::json parsed = nlohmann::json::parse(slurp(j));
    CHECK(parsed["config"]["subcommand"] == "pht-shape");
    CHECK(parsed["rows"].size() == 32);
    CHECK(contains(slurp(svg), "<svg"));
}

TEST_CASE("cli: FPPTESS_SEED is equivalent to --seed") {
    int rc = -1;
    std::string a = scratch_dir() + "/erg_env.csv";
    std::string b = scratch_dir() + "/erg_flag.csv";
    run_cli("voronoi-ergodic --lambda 1 --n 3 --seeds 2 --no-timestamp --out " + a, rc,
            "FPPTESS_SEED=777");
    CHECK(rc == 0);
    run_cli("voronoi-ergodic --lambda 1 --n 3 --seeds 2 --seed 777 --no-timestamp --out " +
                b,
            rc);
    CHECK(rc == 0);
    std::string csv_a = slurp(a);
    // the config echo records the seed differently; compare data lines only
    auto body = [](const std::string& s) { return s.substr(s.find('\n') + 1); };
    CHECK(body(csv_a) == body(slurp(b)));
    CHECK(contains(csv_a, "lambda,n,seed,ball_size,ball_area"));

    run_cli("covering --dim 2 --delta 1", rc, "FPPTESS_SEED=notanumber");
    CHECK(rc == 2);
}

TEST_CASE("cli: voronoi-timeconst smoke run") {
    int rc = -1;
    std::string out_csv = scratch_dir() + "/tc.csv";
    std::string out = run_cli(
        "voronoi-timeconst --lambda 2 --r 5 --reps 5 --no-timestamp --out " + out_csv,
        rc);
    CHECK(rc == 0);
    CHECK(contains(out, "r=5"));
    CHECK(contains(out, "censored="));
    std::string csv = slurp(out_csv);
    CHECK(contains(csv, "lambda,mark_spec,ux,uy,r,mean,stderr,n_censored"));
    // header + config + one radius row
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("cli: tameness smoke run") {
    int rc = -1;
    std::string out_csv = scratch_dir() + "/tm.csv";
    std::string out = run_cli(
        "tameness --model voronoi --field U --lambda 1 --delta 1.5 --box 3 "
        "--n 6 --restarts 10 --seeds 1 --no-timestamp --out " +
            out_csv,
        rc);
    CHECK(rc == 0);
    CHECK(contains(out, "greedy U-animal avg"));
    CHECK(contains(slurp(out_csv), "voronoi:U"));

    // the pht backend only offers W
    run_cli("tameness --model pht --field Y --out " + scratch_dir() + "/no.csv", rc);
    CHECK(rc == 2);
}

TEST_CASE("cli: pht-deviation smoke run") {
    int rc = -1;
    std::string out_csv = scratch_dir() + "/dev.csv";
    std::string out = run_cli(
        "pht-deviation --r 5 --eps 1.0 --reps 20 --no-timestamp --out " + out_csv, rc);
    CHECK(rc == 0);
    CHECK(contains(out, "exceed="));
    std::string csv = slurp(out_csv);
    CHECK(contains(csv, "r,eps,n_reps,exceed_prob,reference_decay"));
}
