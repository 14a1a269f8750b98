#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpptess/directional.hpp"
#include "fpptess/ergodic.hpp"
#include "fpptess/errors.hpp"
#include "fpptess/hyperplane.hpp"
#include "fpptess/marks.hpp"
#include "fpptess/parallel.hpp"
#include "fpptess/pht_fpp.hpp"
#include "fpptess/poisson_tail.hpp"
#include "fpptess/sector.hpp"
#include "fpptess/svg.hpp"
#include "fpptess/table.hpp"
#include "fpptess/tameness.hpp"
#include "fpptess/tess_fpp.hpp"
#include "fpptess/voronoi.hpp"

namespace {

using namespace fpptess;

struct CommonOpts {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string format = "csv";
    bool no_timestamp = false;
    std::string out;
};

std::uint64_t env_seed() {
    const char* v = std::getenv("FPPTESS_SEED");
    if (v == nullptr || *v == '\0') return 1;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == nullptr || *end != '\0')
        throw invalid_parameter("FPPTESS_SEED must be a nonnegative integer");
    return static_cast<std::uint64_t>(parsed);
}

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& default_out) {
    o.out = default_out;
    cmd->add_option("--seed", o.seed, "RNG seed (default: FPPTESS_SEED or 1)");
    cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--no-timestamp", o.no_timestamp,
                  "omit the generation-time header line");
    if (!default_out.empty())
        cmd->add_option("--out", o.out, "output file (default: " + default_out + ")");
    else
        cmd->add_option("--out", o.out, "output file (optional)");
}

std::string fmt_u(double v) { return format_double(v); }

std::vector<std::string> direction_columns(std::size_t d) {
    if (d == 2) return {"ux", "uy"};
    if (d == 3) return {"ux", "uy", "uz"};
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < d; ++i) cols.push_back("u" + std::to_string(i));
    return cols;
}

int cmd_pht_shape(double gamma, const std::string& phi_spec,
                  const std::string& mark_spec, std::size_t dirs, std::size_t dim,
                  const std::string& svg_path, const CommonOpts& o) {
    TimeConstantModel m{gamma, parse_directional(phi_spec, dim), parse_marks(mark_spec)};
    LimitShape shape = limit_shape(m, dirs);

    std::vector<std::string> cols = direction_columns(dim);
    cols.push_back("radius");
    Table tab(cols);
    tab.set_config({{"subcommand", "pht-shape"},
                    {"gamma", fmt_u(gamma)},
                    {"phi", phi_spec},
                    {"marks", mark_spec},
                    {"dirs", std::to_string(dirs)},
                    {"dim", std::to_string(dim)},
                    {"seed", std::to_string(o.seed)}});
    for (std::size_t i = 0; i < shape.directions.size(); ++i) {
        std::vector<Table::Cell> row;
        for (double c : shape.directions[i]) row.push_back(c);
        row.push_back(shape.radii[i]);
        tab.add_row(std::move(row));
    }
    tab.write(o.out, o.format, !o.no_timestamp);
    if (!svg_path.empty()) emit_svg(shape, svg_path);
    std::printf("pht-shape: %zu directions -> %s\n", shape.directions.size(),
                o.out.c_str());
    return 0;
}

int cmd_pht_sweep(double gamma, const std::string& phi_spec,
                  const std::string& mark_spec, double r, std::size_t dirs,
                  std::size_t reps, std::size_t dim, const CommonOpts& o) {
    TimeConstantModel m{gamma, parse_directional(phi_spec, dim), parse_marks(mark_spec)};
    std::vector<SweepRow> rows = direction_sweep(m, r, dirs, reps, o.seed, o.threads);

    std::vector<std::string> cols = direction_columns(dim);
    for (const char* c : {"r", "mean_tau_over_r", "stderr", "mu"}) cols.push_back(c);
    Table tab(cols);
    tab.set_config({{"subcommand", "pht-sweep"},
                    {"gamma", fmt_u(gamma)},
                    {"phi", phi_spec},
                    {"marks", mark_spec},
                    {"r", fmt_u(r)},
                    {"dirs", std::to_string(dirs)},
                    {"reps", std::to_string(reps)},
                    {"dim", std::to_string(dim)},
                    {"seed", std::to_string(o.seed)},
                    {"threads", std::to_string(o.threads)}});
    for (const SweepRow& sr : rows) {
        std::vector<Table::Cell> row;
        for (double c : sr.u) row.push_back(c);
        row.push_back(sr.r);
        row.push_back(sr.mean_tau_over_r);
        row.push_back(sr.stderr_mean);
        row.push_back(sr.mu_analytic);
        tab.add_row(std::move(row));
    }
    tab.write(o.out, o.format, !o.no_timestamp);
    std::printf("pht-sweep: %zu directions at r=%g -> %s\n", rows.size(), r,
                o.out.c_str());
    return 0;
}

int cmd_pht_deviation(double gamma, const std::string& phi_spec,
                      const std::string& mark_spec, std::vector<double> r_list,
                      std::vector<double> eps_list, std::size_t reps,
                      const CommonOpts& o) {
    TimeConstantModel m{gamma, parse_directional(phi_spec, 2), parse_marks(mark_spec)};
    std::vector<DeviationRow> rows =
        deviation_experiment(m, r_list, eps_list, reps, o.seed, o.threads);

    Table tab({"r", "eps", "n_reps", "exceed_prob", "reference_decay"});
    tab.set_config({{"subcommand", "pht-deviation"},
                    {"gamma", fmt_u(gamma)},
                    {"phi", phi_spec},
                    {"marks", mark_spec},
                    {"reps", std::to_string(reps)},
                    {"seed", std::to_string(o.seed)},
                    {"threads", std::to_string(o.threads)}});
    for (const DeviationRow& dr : rows) {
        tab.add_row({dr.r, dr.eps, static_cast<long long>(dr.n_reps), dr.exceed_prob,
                     dr.reference_decay});
        std::printf("r=%-6g eps=%-5g grid=%zu (delta=%.3g) exceed=%.4g ref=%.4g\n",
                    dr.r, dr.eps, dr.grid_size, dr.grid_delta, dr.exceed_prob,
                    dr.reference_decay);
    }
    tab.write(o.out, o.format, !o.no_timestamp);
    return 0;
}

int cmd_poisson_tail(double lambda, double x, const std::string& side,
                     const CommonOpts& o) {
    TailSide ts = side == "lower" ? TailSide::lower : TailSide::upper;
    PoissonTailResult r = poisson_tail(lambda, x, ts);
    std::printf("exact=%.6g paper=%.6g chernoff=%.6g VIOLATION=%s\n", r.exact,
                r.paper_bound, r.chernoff_bound, r.violated ? "true" : "false");
    if (!o.out.empty()) {
        Table tab({"lambda", "x", "side", "exact", "paper_bound", "chernoff_bound",
                   "violated"});
        tab.set_config({{"subcommand", "poisson-tail"},
                        {"lambda", fmt_u(lambda)},
                        {"x", fmt_u(x)},
                        {"side", side}});
        tab.add_row({lambda, x, side, r.exact, r.paper_bound, r.chernoff_bound,
                     static_cast<long long>(r.violated ? 1 : 0)});
        tab.write(o.out, o.format, !o.no_timestamp);
    }
    return 0;
}

int cmd_voronoi_ergodic(double lambda, int n, long seeds, const CommonOpts& o) {
    double R_safe = ball_window_radius(lambda, n);
    double R_gen = R_safe + 6.0 / std::sqrt(lambda);

    auto reps = static_cast<std::size_t>(seeds);
    std::vector<BallSample> samples(reps);
    std::vector<long long> rep_seed(reps);
    parallel_for(reps, static_cast<int>(o.threads), [&](std::size_t rep) {
        std::uint64_t s = substream_seed(o.seed, static_cast<std::uint64_t>(rep));
        rep_seed[rep] = static_cast<long long>(s);
        Tessellation2D t = sample_voronoi(lambda, R_gen, R_safe, s);
        samples[rep] = ball_sample(t, n);
    });

    Table tab({"lambda", "n", "seed", "ball_size", "ball_area", "avg_area",
               "avg_perimeter", "avg_neighbors", "censored", "ratio"});
    tab.set_config({{"subcommand", "voronoi-ergodic"},
                    {"lambda", fmt_u(lambda)},
                    {"n", std::to_string(n)},
                    {"seeds", std::to_string(seeds)},
                    {"R_gen", fmt_u(R_gen)},
                    {"R_safe", fmt_u(R_safe)},
                    {"seed", std::to_string(o.seed)},
                    {"threads", std::to_string(o.threads)}});
    double rsum = 0.0;
    long used = 0;
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const BallSample& b = samples[rep];
        double ratio = b.area > 0.0 ? static_cast<double>(b.size) / b.area : 0.0;
        if (!b.censored) {
            rsum += ratio;
            ++used;
        }
        tab.add_row({lambda, static_cast<long long>(n), rep_seed[rep],
                     static_cast<long long>(b.size), b.area, b.avg_area,
                     b.avg_perimeter, b.avg_neighbors,
                     static_cast<long long>(b.censored ? 1 : 0), ratio});
    }
    tab.write(o.out, o.format, !o.no_timestamp);
    std::printf("voronoi-ergodic: mean ratio %.4f over %ld uncensored seeds -> %s\n",
                used > 0 ? rsum / static_cast<double>(used) : 0.0, used, o.out.c_str());
    return 0;
}

int cmd_voronoi_timeconst(double lambda, const std::string& mark_spec, double ux,
                          double uy, std::vector<double> r_list, long reps,
                          double window_scale, const CommonOpts& o) {
    double un = std::hypot(ux, uy);
    if (un == 0.0) throw invalid_parameter("direction must be nonzero");
    Pt u{ux / un, uy / un};
    MarkPtr marks = parse_marks(mark_spec);

    double rmax = 0.0;
    for (double r : r_list) rmax = std::max(rmax, r);
    double rt = std::sqrt(lambda);
    double R_safe = window_scale * rmax + 12.0 / rt;
    double R_gen = R_safe + 6.0 / rt;

    std::vector<TimeConstantRow> rows = time_constant_estimate(
        lambda, *marks, u, r_list, reps, o.seed, R_gen, R_safe,
        static_cast<int>(o.threads));

    Table tab({"lambda", "mark_spec", "ux", "uy", "r", "mean", "stderr",
               "n_censored"});
    tab.set_config({{"subcommand", "voronoi-timeconst"},
                    {"lambda", fmt_u(lambda)},
                    {"marks", mark_spec},
                    {"reps", std::to_string(reps)},
                    {"R_gen", fmt_u(R_gen)},
                    {"R_safe", fmt_u(R_safe)},
                    {"seed", std::to_string(o.seed)},
                    {"threads", std::to_string(o.threads)}});
    for (const TimeConstantRow& r : rows) {
        tab.add_row({lambda, mark_spec, u.x, u.y, r.r, r.mean, r.stderr_mean,
                     static_cast<long long>(r.n_censored)});
        std::printf("r=%-6g mean=%.4f stderr=%.4f mean/r=%.4f censored=%ld\n", r.r,
                    r.mean, r.stderr_mean, r.r > 0 ? r.mean / r.r : 0.0,
                    r.n_censored);
    }
    tab.write(o.out, o.format, !o.no_timestamp);
    return 0;
}

int cmd_tameness(const std::string& model, double lambda, double gamma,
                 const std::string& phi_spec, const std::string& mark_spec,
                 const std::string& field, double delta, double rho, int box,
                 long n, long restarts, long seeds, const CommonOpts& o) {
    if (model == "pht" && field != "W")
        throw invalid_parameter("tameness: the pht backend only provides the W field");

    Table tab({"model", "delta", "rho", "n", "greedy_max_avg", "n_restarts", "seed"});
    tab.set_config({{"subcommand", "tameness"},
                    {"model", model},
                    {"field", field},
                    {"lambda", fmt_u(lambda)},
                    {"gamma", fmt_u(gamma)},
                    {"phi", phi_spec},
                    {"marks", mark_spec},
                    {"delta", fmt_u(delta)},
                    {"rho", fmt_u(rho)},
                    {"box", std::to_string(box)},
                    {"seeds", std::to_string(seeds)},
                    {"seed", std::to_string(o.seed)}});

    double rt = std::sqrt(lambda);
    for (long rep = 0; rep < seeds; ++rep) {
        std::uint64_t s = substream_seed(o.seed, static_cast<std::uint64_t>(rep));
        GridField f;
        if (model == "voronoi") {
            double R_safe = delta * (box + 2) * 1.5 + 8.0 / rt;
            double R_gen = R_safe + 6.0 / rt;
            Tessellation2D t = sample_voronoi(lambda, R_gen, R_safe, s);
            if (field == "W") {
                MarkedGraph g =
                    assign_marks(t, *parse_marks(mark_spec), splitmix64(s ^ 0x57ULL));
                f = compute_W_voronoi(t, g, delta, rho, box);
            } else {
                TamenessFields tf = compute_fields(t, delta, box);
                f = field == "Y" ? std::move(tf.Y) : std::move(tf.U);
            }
        } else {
            double R = delta * (box + 1.5) * std::sqrt(2.0) * 1.05;
            PhtSample ps = sample_pht(gamma, parse_directional(phi_spec, 2), R,
                                      parse_marks(mark_spec), s);
            f = compute_W_pht(ps, delta, rho, box);
        }
        AnimalStat st = greedy_animal_max(f, n, restarts, splitmix64(s ^ 0xA1ULL));
        tab.add_row({model + ":" + field, delta, rho, static_cast<long long>(st.n),
                     st.greedy_max_avg, static_cast<long long>(st.n_restarts),
                     static_cast<long long>(s)});
        std::printf("seed %ld: greedy %s-animal avg = %.4f (n=%ld, restarts=%ld)\n",
                    rep, field.c_str(), st.greedy_max_avg, n, restarts);
    }
    tab.write(o.out, o.format, !o.no_timestamp);
    return 0;
}

int cmd_covering(std::size_t dim, double delta, const CommonOpts& o) {
    Covering cov = sphere_covering(dim, delta);
    std::printf("covering: d=%zu delta=%g k=%zu c1=%.6g bound=%.6g\n", dim, delta,
                cov.k, cov.c1, cov.size_bound);
    if (!o.out.empty()) {
        Table tab(direction_columns(dim));
        tab.set_config({{"subcommand", "covering"},
                        {"dim", std::to_string(dim)},
                        {"delta", fmt_u(delta)},
                        {"k", std::to_string(cov.k)},
                        {"c1", fmt_u(cov.c1)},
                        {"size_bound", fmt_u(cov.size_bound)}});
        for (const Vec& u : cov.directions) {
            std::vector<Table::Cell> row;
            for (double c : u) row.push_back(c);
            tab.add_row(std::move(row));
        }
        tab.write(o.out, o.format, !o.no_timestamp);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-passage percolation on random tessellations"};
    app.require_subcommand(1);

    std::uint64_t default_seed;
    try {
        default_seed = env_seed();
    } catch (const invalid_parameter& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    // pht-shape
    auto* shape = app.add_subcommand("pht-shape", "closed-form limit shape boundary");
    double sh_gamma = M_PI;
    std::string sh_phi = "isotropic", sh_marks = "det:1", sh_svg;
    std::size_t sh_dirs = 64, sh_dim = 2;
    CommonOpts sh_o;
    shape->add_option("--gamma", sh_gamma, "hyperplane intensity")->check(CLI::PositiveNumber);
    shape->add_option("--phi", sh_phi, "directional distribution spec");
    shape->add_option("--marks", sh_marks, "mark distribution spec");
    shape->add_option("--dirs", sh_dirs, "number of directions")->check(CLI::Range(std::size_t(4), std::size_t(1000000)));
    shape->add_option("--dim", sh_dim, "dimension")->check(CLI::Range(std::size_t(2), std::size_t(8)));
    shape->add_option("--svg", sh_svg, "also draw the shape to this SVG file");
    add_common(shape, sh_o, "shape.csv");

    // pht-sweep
    auto* sweep = app.add_subcommand("pht-sweep", "Monte Carlo tau/r vs analytic mu");
    double sw_gamma = M_PI, sw_r = 100.0;
    std::string sw_phi = "isotropic", sw_marks = "det:1";
    std::size_t sw_dirs = 16, sw_reps = 400, sw_dim = 2;
    CommonOpts sw_o;
    sweep->add_option("--gamma", sw_gamma)->check(CLI::PositiveNumber);
    sweep->add_option("--phi", sw_phi);
    sweep->add_option("--marks", sw_marks);
    sweep->add_option("--r", sw_r, "segment length")->check(CLI::PositiveNumber);
    sweep->add_option("--dirs", sw_dirs)->check(CLI::Range(std::size_t(1), std::size_t(4096)));
    sweep->add_option("--reps", sw_reps)->check(CLI::Range(std::size_t(2), std::size_t(10000000)));
    sweep->add_option("--dim", sw_dim)->check(CLI::Range(std::size_t(2), std::size_t(8)));
    add_common(sweep, sw_o, "direction_sweep.csv");

    // pht-deviation
    auto* dev = app.add_subcommand("pht-deviation", "shape-theorem deviation decay");
    double dv_gamma = M_PI;
    std::string dv_phi = "isotropic", dv_marks = "det:1";
    std::vector<double> dv_r{20.0, 40.0, 80.0}, dv_eps{0.5};
    std::size_t dv_reps = 2000;
    CommonOpts dv_o;
    dev->add_option("--gamma", dv_gamma)->check(CLI::PositiveNumber);
    dev->add_option("--phi", dv_phi);
    dev->add_option("--marks", dv_marks);
    dev->add_option("--r", dv_r, "radii to test");
    dev->add_option("--eps", dv_eps, "relative deviations");
    dev->add_option("--reps", dv_reps)->check(CLI::Range(std::size_t(2), std::size_t(10000000)));
    add_common(dev, dv_o, "deviation.csv");

    // poisson-tail
    auto* pt = app.add_subcommand("poisson-tail", "exact tail vs paper and Chernoff bounds");
    double pt_lambda = 1.0, pt_x = 1.0;
    std::string pt_side = "lower";
    CommonOpts pt_o;
    pt->add_option("--lambda", pt_lambda)->check(CLI::PositiveNumber)->required();
    pt->add_option("--x", pt_x)->check(CLI::NonNegativeNumber)->required();
    pt->add_option("--side", pt_side)->check(CLI::IsMember({"lower", "upper"}))->required();
    add_common(pt, pt_o, "");

    // voronoi-ergodic
    auto* erg = app.add_subcommand("voronoi-ergodic", "graph-ball ergodic averages");
    double er_lambda = 1.0;
    int er_n = 30;
    long er_seeds = 100;
    CommonOpts er_o;
    erg->add_option("--lambda", er_lambda)->check(CLI::PositiveNumber);
    erg->add_option("--n", er_n, "graph-ball radius")->check(CLI::Range(0, 1000));
    erg->add_option("--seeds", er_seeds, "replicates")->check(CLI::Range(1l, 10000000l));
    add_common(erg, er_o, "ergodic.csv");

    // voronoi-timeconst
    auto* tc = app.add_subcommand("voronoi-timeconst", "graph FPP time-constant estimate");
    double tc_lambda = 1.0, tc_ux = 1.0, tc_uy = 0.0, tc_window = 1.4;
    std::string tc_marks = "det:1";
    std::vector<double> tc_r{10.0, 20.0, 40.0};
    long tc_reps = 50;
    CommonOpts tc_o;
    tc->add_option("--lambda", tc_lambda)->check(CLI::PositiveNumber);
    tc->add_option("--marks", tc_marks);
    tc->add_option("--ux", tc_ux);
    tc->add_option("--uy", tc_uy);
    tc->add_option("--r", tc_r, "radii");
    tc->add_option("--reps", tc_reps)->check(CLI::Range(1l, 10000000l));
    tc->add_option("--window-scale", tc_window, "safe radius = scale*max_r + 12/sqrt(lambda)")
        ->check(CLI::Range(1.0, 10.0));
    add_common(tc, tc_o, "time_constant.csv");

    // tameness
    auto* tm = app.add_subcommand("tameness", "grid fields and greedy animal statistic");
    std::string tm_model = "voronoi", tm_field = "U", tm_phi = "isotropic",
                tm_marks = "det:1";
    double tm_lambda = 1.0, tm_gamma = M_PI, tm_delta = 5.0, tm_rho = 0.0;
    int tm_box = 10;
    long tm_n = 50, tm_restarts = 100, tm_seeds = 1;
    CommonOpts tm_o;
    tm->add_option("--model", tm_model)->check(CLI::IsMember({"voronoi", "pht"}));
    tm->add_option("--field", tm_field)->check(CLI::IsMember({"Y", "U", "W"}));
    tm->add_option("--lambda", tm_lambda)->check(CLI::PositiveNumber);
    tm->add_option("--gamma", tm_gamma)->check(CLI::PositiveNumber);
    tm->add_option("--phi", tm_phi);
    tm->add_option("--marks", tm_marks);
    tm->add_option("--delta", tm_delta)->check(CLI::PositiveNumber);
    tm->add_option("--rho", tm_rho)->check(CLI::NonNegativeNumber);
    tm->add_option("--box", tm_box, "grid radius in sites")->check(CLI::Range(1, 400));
    tm->add_option("--n", tm_n, "animal size")->check(CLI::Range(1l, 1000000l));
    tm->add_option("--restarts", tm_restarts)->check(CLI::Range(0l, 1000000l));
    tm->add_option("--seeds", tm_seeds)->check(CLI::Range(1l, 100000l));
    add_common(tm, tm_o, "tameness.csv");

    // covering
    auto* cv = app.add_subcommand("covering", "sphere covering by sectors");
    std::size_t cv_dim = 2;
    double cv_delta = 0.5;
    CommonOpts cv_o;
    cv->add_option("--dim", cv_dim)->check(CLI::Range(std::size_t(2), std::size_t(6)));
    cv->add_option("--delta", cv_delta)->check(CLI::Range(1e-6, 2.0));
    add_common(cv, cv_o, "");

    for (CommonOpts* o : {&sh_o, &sw_o, &dv_o, &pt_o, &er_o, &tc_o, &tm_o, &cv_o})
        o->seed = default_seed;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (shape->parsed())
            return cmd_pht_shape(sh_gamma, sh_phi, sh_marks, sh_dirs, sh_dim, sh_svg, sh_o);
        if (sweep->parsed())
            return cmd_pht_sweep(sw_gamma, sw_phi, sw_marks, sw_r, sw_dirs, sw_reps,
                                 sw_dim, sw_o);
        if (dev->parsed())
            return cmd_pht_deviation(dv_gamma, dv_phi, dv_marks, dv_r, dv_eps, dv_reps,
                                     dv_o);
        if (pt->parsed()) return cmd_poisson_tail(pt_lambda, pt_x, pt_side, pt_o);
        if (erg->parsed()) return cmd_voronoi_ergodic(er_lambda, er_n, er_seeds, er_o);
        if (tc->parsed())
            return cmd_voronoi_timeconst(tc_lambda, tc_marks, tc_ux, tc_uy, tc_r,
                                         tc_reps, tc_window, tc_o);
        if (tm->parsed())
            return cmd_tameness(tm_model, tm_lambda, tm_gamma, tm_phi, tm_marks,
                                tm_field, tm_delta, tm_rho, tm_box, tm_n, tm_restarts,
                                tm_seeds, tm_o);
        if (cv->parsed()) return cmd_covering(cv_dim, cv_delta, cv_o);
    } catch (const invalid_parameter& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
