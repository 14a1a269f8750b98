#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fpptess/errors.hpp"
#include "fpptess/rng.hpp"

namespace fpptess {

// Dimension-generic point/direction, d small (tested up to 8).
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Vec negate(const Vec& a) { return scale(-1.0, a); }

inline Vec zero_vec(std::size_t d) { return Vec(d, 0.0); }

inline Vec unit_axis(std::size_t d, std::size_t i) {
    Vec r(d, 0.0);
    r[i] = 1.0;
    return r;
}

// Normalizes a vector expected to be a direction; accepts anything within
// 1e-9 of unit length, rejects the rest so silently skewed inputs surface.
inline Vec require_unit(const Vec& u, const char* what) {
    double n = norm(u);
    if (std::abs(n - 1.0) > 1e-9)
        throw invalid_parameter(std::string(what) + ": direction must be unit length");
    return scale(1.0 / n, u);
}

inline Vec sample_unit_sphere(RandomStream& rng, std::size_t d) {
    Vec v(d);
    while (true) {
        for (std::size_t i = 0; i < d; ++i) v[i] = rng.normal();
        double n = norm(v);
        if (n > 1e-12) return scale(1.0 / n, v);
    }
}

// rank of the span of a set of vectors (Gaussian elimination, partial pivot)
inline std::size_t span_rank(std::vector<Vec> rows, double tol = 1e-9) {
    if (rows.empty()) return 0;
    std::size_t d = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
        if (std::abs(rows[pivot][col]) <= tol) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            double f = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < d; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

} // namespace fpptess
