#include "fpptess/poisson_tail.hpp"

#include <cmath>
#include <vector>

#include "fpptess/errors.hpp"

namespace fpptess {

namespace {

// eta(t) = (1+t) ln(1+t) - t on [-1, inf), with the limit value eta(-1) = 1
double eta(double t) {
    if (t <= -1.0) return 1.0;
    return (1.0 + t) * std::log1p(t) - t;
}

// log-sum-exp over log-space pmf terms with Kahan compensation; keeps
// relative accuracy even when the result is far below 1e-300
double log_space_sum(const std::vector<double>& log_terms) {
    double lmax = -HUGE_VAL;
    for (double lt : log_terms) lmax = std::max(lmax, lt);
    if (lmax == -HUGE_VAL) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (double lt : log_terms) {
        double term = std::exp(lt - lmax);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::exp(lmax + std::log(sum));
}

} // namespace

double poisson_log_pmf(double lambda, long k) {
    if (k < 0) return -HUGE_VAL;
    double kk = static_cast<double>(k);
    return kk * std::log(lambda) - lambda - std::lgamma(kk + 1.0);
}

double poisson_cdf(double lambda, long k) {
    if (k < 0) return 0.0;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(k) + 1);
    for (long i = 0; i <= k; ++i) terms.push_back(poisson_log_pmf(lambda, i));
    double s = log_space_sum(terms);
    return std::min(s, 1.0);
}

double poisson_upper_tail(double lambda, long k) {
    if (k <= 0) return 1.0;
    if (static_cast<double>(k) <= lambda)
        return std::min(1.0, 1.0 - poisson_cdf(lambda, k - 1));
    // k above the mean: terms decrease geometrically; sum until negligible
    std::vector<double> terms;
    double head = poisson_log_pmf(lambda, k);
    for (long i = k;; ++i) {
        double lt = poisson_log_pmf(lambda, i);
        terms.push_back(lt);
        if (lt < head - 64.0 && static_cast<double>(i) > lambda) break;
    }
    return log_space_sum(terms);
}

PoissonTailResult poisson_tail(double lambda, double x, TailSide side) {
    if (!(lambda > 0.0)) throw invalid_parameter("poisson_tail: lambda must be > 0");
    if (!(x >= 0.0)) throw invalid_parameter("poisson_tail: x must be >= 0");

    PoissonTailResult res;
    res.paper_bound = std::exp(-x * x / (2.0 * lambda));

    if (side == TailSide::lower) {
        double threshold = lambda - x;
        if (threshold < 0.0) {
            res.exact = 0.0;
            res.chernoff_bound = 0.0;  // the event {N <= negative} is empty
        } else {
            res.exact = poisson_cdf(lambda, static_cast<long>(std::floor(threshold)));
            res.chernoff_bound = std::exp(-lambda * eta(-x / lambda));
        }
    } else {
        double threshold = lambda + x;
        res.exact = poisson_upper_tail(lambda, static_cast<long>(std::ceil(threshold)));
        res.chernoff_bound = std::exp(-lambda * eta(x / lambda));
    }
    res.violated = res.exact > res.paper_bound;
    return res;
}

} // namespace fpptess
