#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fpptess/rng.hpp"
#include "fpptess/vec.hpp"

namespace fpptess {

// Even directional distribution phi on the unit sphere whose support spans
// R^d (not concentrated on a great subsphere). Three families:
//   Isotropic(d)                   uniform on S^{d-1}
//   SymmetricAtoms({(u_i, w_i)})   atoms auto-symmetrized to +-u_i, w/2 each
//   Mixture({(phi_j, w_j)})        convex combination
class DirectionalDistribution {
public:
    virtual ~DirectionalDistribution() = default;

    virtual std::size_t dim() const = 0;
    virtual Vec sample(RandomStream& rng) const = 0;

    // E_phi[ (<x,u>)_+ ]; exact for atoms, closed form for isotropic d=2,
    // polar-angle quadrature for isotropic d >= 3.
    virtual double mean_positive_part(const Vec& x) const = 0;

    // vectors whose span witnesses the full-dimensionality invariant
    virtual std::vector<Vec> span_witness() const = 0;

    virtual std::string describe() const = 0;
};

using DirectionalPtr = std::shared_ptr<const DirectionalDistribution>;

DirectionalPtr make_isotropic(std::size_t d);
DirectionalPtr make_symmetric_atoms(const std::vector<std::pair<Vec, double>>& atoms);
DirectionalPtr make_mixture(const std::vector<std::pair<DirectionalPtr, double>>& parts);

// Support function of the associated zonoid:
// h(x) = gamma * E_phi[ |<x,u>| ] = 2 * gamma * mean_positive_part(phi, x).
double zonoid_support(double gamma, const DirectionalDistribution& phi, const Vec& x);

// Config strings: "isotropic" (dimension from context),
// "atoms:u1x,u1y:w1;u2x,u2y:w2" (any d, coords comma-separated),
// "mixture:w1*spec1|w2*spec2" (recursive).
DirectionalPtr parse_directional(const std::string& spec, std::size_t d);

} // namespace fpptess
