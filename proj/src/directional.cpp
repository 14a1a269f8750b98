#include "fpptess/directional.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fpptess/errors.hpp"

namespace fpptess {

namespace {

// E[(cos theta)_+] for the polar angle of a uniform direction on S^{d-1}:
// numerator int_0^{pi/2} cos t sin^{d-2} t dt over the full normalizer
// int_0^pi sin^{d-2} t dt, both by Gauss-Kronrod.
double isotropic_positive_part_factor(std::size_t d) {
    using boost::math::quadrature::gauss_kronrod;
    double p = static_cast<double>(d) - 2.0;
    auto weight = [p](double t) { return std::pow(std::sin(t), p); };
    auto weighted_cos = [&](double t) { return std::cos(t) * weight(t); };
    double err1 = 0.0, err2 = 0.0;
    double num = gauss_kronrod<double, 61>::integrate(weighted_cos, 0.0, M_PI / 2.0,
                                                      12, 1e-12, &err1);
    double den = gauss_kronrod<double, 61>::integrate(weight, 0.0, M_PI,
                                                      12, 1e-12, &err2);
    if (!(den > 0.0) || err1 > 1e-9 * std::abs(num) + 1e-14 ||
        err2 > 1e-9 * den + 1e-14)
        throw numeric_failure("isotropic quadrature did not converge");
    return num / den;
}

class Isotropic final : public DirectionalDistribution {
public:
    explicit Isotropic(std::size_t d) : d_(d) {
        if (d < 2) throw invalid_parameter("Isotropic: need d >= 2");
        factor_ = (d == 2) ? 1.0 / M_PI : isotropic_positive_part_factor(d);
    }

    std::size_t dim() const override { return d_; }

    Vec sample(RandomStream& rng) const override {
        return sample_unit_sphere(rng, d_);
    }

    double mean_positive_part(const Vec& x) const override {
        return norm(x) * factor_;
    }

    std::vector<Vec> span_witness() const override {
        std::vector<Vec> w;
        for (std::size_t i = 0; i < d_; ++i) w.push_back(unit_axis(d_, i));
        return w;
    }

    std::string describe() const override { return "isotropic"; }

private:
    std::size_t d_;
    double factor_;
};

class SymmetricAtoms final : public DirectionalDistribution {
public:
    explicit SymmetricAtoms(const std::vector<std::pair<Vec, double>>& atoms) {
        if (atoms.empty()) throw invalid_parameter("SymmetricAtoms: no atoms");
        d_ = atoms[0].first.size();
        double total = 0.0;
        for (const auto& [u, w] : atoms) {
            if (u.size() != d_)
                throw invalid_parameter("SymmetricAtoms: mixed dimensions");
            if (!(w > 0.0))
                throw invalid_parameter("SymmetricAtoms: weights must be > 0");
            total += w;
        }
        // symmetrize: each input atom contributes +-u with half its weight
        for (const auto& [u, w] : atoms) {
            Vec uu = require_unit(u, "SymmetricAtoms");
            dirs_.push_back(uu);
            weights_.push_back(0.5 * w / total);
            dirs_.push_back(negate(uu));
            weights_.push_back(0.5 * w / total);
        }
        if (span_rank(dirs_) < d_)
            throw invalid_parameter(
                "SymmetricAtoms: atoms concentrated on a great subsphere");
    }

    std::size_t dim() const override { return d_; }

    Vec sample(RandomStream& rng) const override {
        return dirs_[rng.categorical(weights_)];
    }

    double mean_positive_part(const Vec& x) const override {
        double s = 0.0;
        for (std::size_t i = 0; i < dirs_.size(); ++i) {
            double v = dot(x, dirs_[i]);
            if (v > 0.0) s += weights_[i] * v;
        }
        return s;
    }

    std::vector<Vec> span_witness() const override { return dirs_; }

    std::string describe() const override {
        std::ostringstream os;
        os << "atoms:";
        for (std::size_t i = 0; i < dirs_.size(); i += 2) {
            if (i) os << ";";
            for (std::size_t c = 0; c < d_; ++c) {
                if (c) os << ",";
                os << dirs_[i][c];
            }
            os << ":" << 2.0 * weights_[i];
        }
        return os.str();
    }

private:
    std::size_t d_;
    std::vector<Vec> dirs_;
    std::vector<double> weights_;
};

class Mixture final : public DirectionalDistribution {
public:
    explicit Mixture(const std::vector<std::pair<DirectionalPtr, double>>& parts) {
        if (parts.empty()) throw invalid_parameter("Mixture: no components");
        d_ = parts[0].first->dim();
        double total = 0.0;
        for (const auto& [phi, w] : parts) {
            if (phi->dim() != d_)
                throw invalid_parameter("Mixture: mixed dimensions");
            if (!(w > 0.0)) throw invalid_parameter("Mixture: weights must be > 0");
            total += w;
        }
        for (const auto& [phi, w] : parts) {
            parts_.push_back(phi);
            weights_.push_back(w / total);
        }
        std::vector<Vec> all;
        for (const auto& phi : parts_)
            for (const auto& v : phi->span_witness()) all.push_back(v);
        if (span_rank(all) < d_)
            throw invalid_parameter("Mixture: support on a great subsphere");
    }

    std::size_t dim() const override { return d_; }

    Vec sample(RandomStream& rng) const override {
        return parts_[rng.categorical(weights_)]->sample(rng);
    }

    double mean_positive_part(const Vec& x) const override {
        double s = 0.0;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            s += weights_[i] * parts_[i]->mean_positive_part(x);
        return s;
    }

    std::vector<Vec> span_witness() const override {
        std::vector<Vec> all;
        for (const auto& phi : parts_)
            for (const auto& v : phi->span_witness()) all.push_back(v);
        return all;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "mixture:";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << "|";
            os << weights_[i] << "*" << parts_[i]->describe();
        }
        return os.str();
    }

private:
    std::size_t d_;
    std::vector<DirectionalPtr> parts_;
    std::vector<double> weights_;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw invalid_parameter(std::string(what) + ": bad number '" + s + "'");
    }
}

} // namespace

DirectionalPtr make_isotropic(std::size_t d) {
    return std::make_shared<Isotropic>(d);
}

DirectionalPtr make_symmetric_atoms(const std::vector<std::pair<Vec, double>>& atoms) {
    return std::make_shared<SymmetricAtoms>(atoms);
}

DirectionalPtr make_mixture(const std::vector<std::pair<DirectionalPtr, double>>& parts) {
    return std::make_shared<Mixture>(parts);
}

double zonoid_support(double gamma, const DirectionalDistribution& phi, const Vec& x) {
    return 2.0 * gamma * phi.mean_positive_part(x);
}

DirectionalPtr parse_directional(const std::string& spec, std::size_t d) {
    if (spec == "isotropic") return make_isotropic(d);
    if (spec.rfind("atoms:", 0) == 0) {
        std::vector<std::pair<Vec, double>> atoms;
        for (const std::string& entry : split_on(spec.substr(6), ';')) {
            auto fields = split_on(entry, ':');
            if (fields.size() != 2)
                throw invalid_parameter("atoms: expected 'coords:weight' in '" + entry + "'");
            Vec u;
            for (const std::string& c : split_on(fields[0], ','))
                u.push_back(parse_double(c, "atoms"));
            if (u.size() != d)
                throw invalid_parameter("atoms: direction dimension mismatch");
            atoms.emplace_back(u, parse_double(fields[1], "atoms"));
        }
        return make_symmetric_atoms(atoms);
    }
    if (spec.rfind("mixture:", 0) == 0) {
        std::vector<std::pair<DirectionalPtr, double>> parts;
        for (const std::string& entry : split_on(spec.substr(8), '|')) {
            std::size_t star = entry.find('*');
            if (star == std::string::npos)
                throw invalid_parameter("mixture: expected 'weight*spec' in '" + entry + "'");
            double w = parse_double(entry.substr(0, star), "mixture");
            parts.emplace_back(parse_directional(entry.substr(star + 1), d), w);
        }
        return make_mixture(parts);
    }
    throw invalid_parameter("unknown directional spec '" + spec + "'");
}

} // namespace fpptess
