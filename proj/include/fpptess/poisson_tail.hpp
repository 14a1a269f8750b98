#pragma once

namespace fpptess {

enum class TailSide { lower, upper };

// Exact Poisson tail probability at deviation x from the mean, together with
// two closed-form bounds:
//   paper_bound    exp(-x^2 / (2 lambda)) for either side; genuinely wrong
//                  for the upper tail when x is large relative to lambda,
//                  so `violated` flags exact > paper_bound
//   chernoff_bound exp(-lambda * eta(+-x/lambda)), eta(t)=(1+t)ln(1+t)-t;
//                  a true bound on both sides (eta(-1)=1 at the endpoint)
// Lower side means P[N <= lambda - x], upper side P[N >= lambda + x].
struct PoissonTailResult {
    double exact = 0;
    double paper_bound = 0;
    double chernoff_bound = 0;
    bool violated = false;  // exact > paper_bound
};

PoissonTailResult poisson_tail(double lambda, double x, TailSide side);

// log of the Poisson pmf at k (k >= 0), used by the tail sum and by
// goodness-of-fit helpers
double poisson_log_pmf(double lambda, long k);

// P[N <= k] and P[N >= k], each summed stably in log space; accurate far
// into the tails (well below 1e-300 in log terms; returns 0 on underflow)
double poisson_cdf(double lambda, long k);
double poisson_upper_tail(double lambda, long k);

} // namespace fpptess
