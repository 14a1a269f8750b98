#include "fpptess/marks.hpp"

#include <cmath>
#include <sstream>

#include "fpptess/errors.hpp"

namespace fpptess {

namespace {

void require_order(double order) {
    if (!(order >= 1.0))
        throw invalid_parameter("mark moment: order must be >= 1");
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

class Deterministic final : public MarkDistribution {
public:
    explicit Deterministic(double c) : c_(c) {
        if (!(c >= 0.0)) throw invalid_parameter("det: value must be >= 0");
    }
    double sample(RandomStream&) const override { return c_; }
    double mean() const override { return c_; }
    double moment(double order) const override {
        require_order(order);
        return std::pow(c_, order);
    }
    std::string describe() const override { return "det:" + num(c_); }

private:
    double c_;
};

class Exponential final : public MarkDistribution {
public:
    explicit Exponential(double rate) : rate_(rate) {
        if (!(rate > 0.0)) throw invalid_parameter("exp: rate must be > 0");
    }
    double sample(RandomStream& rng) const override {
        return rng.exponential(rate_);
    }
    double mean() const override { return 1.0 / rate_; }
    double moment(double order) const override {
        require_order(order);
        return std::tgamma(order + 1.0) / std::pow(rate_, order);
    }
    std::string describe() const override { return "exp:" + num(rate_); }

private:
    double rate_;
};

class Uniform final : public MarkDistribution {
public:
    Uniform(double a, double b) : a_(a), b_(b) {
        if (!(0.0 <= a && a < b))
            throw invalid_parameter("unif: need 0 <= a < b");
    }
    double sample(RandomStream& rng) const override {
        return rng.uniform(a_, b_);
    }
    double mean() const override { return 0.5 * (a_ + b_); }
    double moment(double order) const override {
        require_order(order);
        double p = order + 1.0;
        return (std::pow(b_, p) - std::pow(a_, p)) / ((b_ - a_) * p);
    }
    std::string describe() const override {
        return "unif:" + num(a_) + "," + num(b_);
    }

private:
    double a_, b_;
};

class ZeroAtomMix final : public MarkDistribution {
public:
    ZeroAtomMix(double p0, MarkPtr base) : p0_(p0), base_(std::move(base)) {
        if (!(p0 >= 0.0 && p0 < 1.0))
            throw invalid_parameter("zeromix: need 0 <= p0 < 1");
        if (!base_) throw invalid_parameter("zeromix: missing base");
    }
    double sample(RandomStream& rng) const override {
        // draw the coin first, then the base draw only when needed
        return (rng.uniform01() < p0_) ? 0.0 : base_->sample(rng);
    }
    double mean() const override { return (1.0 - p0_) * base_->mean(); }
    double moment(double order) const override {
        return (1.0 - p0_) * base_->moment(order);
    }
    std::string describe() const override {
        return "zeromix:" + num(p0_) + "," + base_->describe();
    }

private:
    double p0_;
    MarkPtr base_;
};

double parse_num(const std::string& s, const char* what) {
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

MarkPtr make_deterministic(double c) { return std::make_shared<Deterministic>(c); }
MarkPtr make_exponential(double rate) { return std::make_shared<Exponential>(rate); }
MarkPtr make_uniform(double a, double b) { return std::make_shared<Uniform>(a, b); }
MarkPtr make_zero_atom_mix(double p0, MarkPtr base) {
    return std::make_shared<ZeroAtomMix>(p0, std::move(base));
}

MarkPtr parse_marks(const std::string& spec) {
    if (spec.rfind("det:", 0) == 0)
        return make_deterministic(parse_num(spec.substr(4), "det"));
    if (spec.rfind("exp:", 0) == 0)
        return make_exponential(parse_num(spec.substr(4), "exp"));
    if (spec.rfind("unif:", 0) == 0) {
        std::string body = spec.substr(5);
        std::size_t comma = body.find(',');
        if (comma == std::string::npos)
            throw invalid_parameter("unif: expected 'a,b'");
        return make_uniform(parse_num(body.substr(0, comma), "unif"),
                            parse_num(body.substr(comma + 1), "unif"));
    }
    if (spec.rfind("zeromix:", 0) == 0) {
        std::string body = spec.substr(8);
        std::size_t comma = body.find(',');
        if (comma == std::string::npos)
            throw invalid_parameter("zeromix: expected 'p0,<base spec>'");
        return make_zero_atom_mix(parse_num(body.substr(0, comma), "zeromix"),
                                  parse_marks(body.substr(comma + 1)));
    }
    throw invalid_parameter("unknown mark spec '" + spec + "'");
}

} // namespace fpptess
