#include "fpptess/hyperplane.hpp"

#include <fstream>

#include <json.hpp>

#include "fpptess/errors.hpp"

namespace fpptess {

PhtSample sample_pht(double gamma, const DirectionalPtr& phi, double R,
                     const MarkPtr& marks, std::uint64_t seed) {
    if (!(gamma > 0.0)) throw invalid_parameter("sample_pht: gamma must be > 0");
    if (!(R >= 0.0)) throw invalid_parameter("sample_pht: R must be >= 0");

    PhtSample s;
    s.gamma = gamma;
    s.R = R;
    s.seed = seed;
    s.d = phi->dim();
    s.phi_spec = phi->describe();
    s.mark_spec = marks->describe();

    RandomStream rng(seed);
    long n = rng.poisson(gamma * R);
    s.planes.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        Hyperplane h;
        h.u = phi->sample(rng);        // draw order per plane: u, r, mark
        h.r = rng.uniform(0.0, R);
        h.mark = marks->sample(rng);
        s.planes.push_back(std::move(h));
    }
    return s;
}

std::size_t crossing_count(const PhtSample& s, const Vec& x, const Vec& y,
                           CrossingConvention conv) {
    if (x.size() != s.d || y.size() != s.d)
        throw invalid_parameter("crossing_count: dimension mismatch");
    double tol = s.R * (1.0 + 1e-12);
    if (norm(x) > tol || norm(y) > tol)
        throw out_of_window("crossing_count: query point outside sampled window");
    std::size_t n = 0;
    for (const Hyperplane& h : s.planes) {
        double a = dot(x, h.u) - h.r;
        double b = dot(y, h.u) - h.r;
        if (segment_crosses(a, b, conv)) ++n;
    }
    return n;
}

double expected_crossings(double gamma, const DirectionalDistribution& phi,
                          const Vec& x) {
    return gamma * phi.mean_positive_part(x);
}

CompoundPoissonStats compound_poisson_stats(double lambda,
                                            const MarkDistribution& marks) {
    if (!(lambda >= 0.0))
        throw invalid_parameter("compound_poisson_stats: lambda must be >= 0");
    return {lambda * marks.mean(), lambda * marks.moment(2.0)};
}

void save_pht_jsonl(const PhtSample& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_failure("cannot open '" + path + "' for writing");
    nlohmann::json header = {
        {"gamma", s.gamma}, {"R", s.R},       {"seed", s.seed},
        {"d", s.d},         {"phi", s.phi_spec}, {"marks", s.mark_spec},
        {"n_planes", s.planes.size()},
    };
    out << header.dump() << "\n";
    for (const Hyperplane& h : s.planes) {
        nlohmann::json rec = {{"u", h.u}, {"r", h.r}, {"x", h.mark}};
        out << rec.dump() << "\n";
    }
    if (!out) throw io_failure("write to '" + path + "' failed");
}

PhtSample load_pht_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_failure("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line))
        throw io_failure("'" + path + "': missing header record");
    nlohmann::json header = nlohmann::json::parse(line);

    PhtSample s;
    s.gamma = header.at("gamma").get<double>();
    s.R = header.at("R").get<double>();
    s.seed = header.at("seed").get<std::uint64_t>();
    s.d = header.at("d").get<std::size_t>();
    s.phi_spec = header.at("phi").get<std::string>();
    s.mark_spec = header.at("marks").get<std::string>();
    std::size_t n = header.at("n_planes").get<std::size_t>();

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        Hyperplane h;
        h.u = rec.at("u").get<Vec>();
        h.r = rec.at("r").get<double>();
        h.mark = rec.at("x").get<double>();
        s.planes.push_back(std::move(h));
    }
    if (s.planes.size() != n)
        throw io_failure("'" + path + "': plane count mismatch");
    return s;
}

} // namespace fpptess
