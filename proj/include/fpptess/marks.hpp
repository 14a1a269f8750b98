#pragma once

#include <memory>
#include <string>

#include "fpptess/rng.hpp"

namespace fpptess {

// Nonnegative mark (passage weight) distribution. Families:
//   Deterministic(c)        point mass at c >= 0
//   Exponential(rate)       mean 1/rate
//   Uniform(a,b)            0 <= a < b
//   ZeroAtomMix(p0, base)   mass p0 at zero, else a draw from base
// All four have every moment finite and in closed form.
class MarkDistribution {
public:
    virtual ~MarkDistribution() = default;

    virtual double sample(RandomStream& rng) const = 0;
    virtual double mean() const = 0;
    // E[X^order] for real order >= 1
    virtual double moment(double order) const = 0;
    virtual std::string describe() const = 0;
};

using MarkPtr = std::shared_ptr<const MarkDistribution>;

MarkPtr make_deterministic(double c);
MarkPtr make_exponential(double rate);
MarkPtr make_uniform(double a, double b);
MarkPtr make_zero_atom_mix(double p0, MarkPtr base);

// Config strings: "det:1.0", "exp:1.0", "unif:0,1", "zeromix:0.3,det:1.0"
// (zeromix nests another spec after the first comma).
MarkPtr parse_marks(const std::string& spec);

} // namespace fpptess
