#pragma once

// Shared generators and independent oracles for the test suites.  The
// oracles (golden-section search, finite differences, direct cross-ratio)
// deliberately avoid the code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "moebius/moebius.hpp"

namespace support {

using namespace moebius;

inline PointConfiguration random_configuration(Rng& rng, int dim, int n,
                                               double min_separation = 1e-6) {
    std::vector<SpherePoint> points;
    points.reserve(n);
    while (static_cast<int>(points.size()) < n) {
        SpherePoint candidate = random_sphere_point(rng, dim);
        bool distinct = true;
        for (const SpherePoint& p : points)
            if ((p.coords() - candidate.coords()).norm() < min_separation) {
                distinct = false;
                break;
            }
        if (distinct) points.push_back(std::move(candidate));
    }
    return PointConfiguration(dim, std::move(points));
}

/// Golden-section minimization of a unimodal function on [lo, hi].
template <class F>
double golden_min(F f, double lo, double hi, double tol = 1e-12) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    return (lo + hi) / 2.0;
}

/// Central difference of t -> f(geodesic_point(x, u, t)) at t = 0.
template <class F>
double fd_directional(F f, const HyperboloidPoint& x, const MinkowskiVector& u,
                      double h = 1e-6) {
    return (f(geodesic_point(x, u, h)) - f(geodesic_point(x, u, -h))) / (2.0 * h);
}

/// Second central difference of the same curve at t = 0.
template <class F>
double fd_second(F f, const HyperboloidPoint& x, const MinkowskiVector& u, double h = 1e-4) {
    return (f(geodesic_point(x, u, h)) - 2.0 * f(x) + f(geodesic_point(x, u, -h))) / (h * h);
}

/// Largest elementwise gap after sorting; infinite on size mismatch.
inline double multiset_max_diff(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline std::vector<double> vertex_norms(const TangentPolytope& poly) {
    std::vector<double> norms;
    norms.reserve(poly.vertices.size());
    for (const Eigen::Vector3d& v : poly.vertices) norms.push_back(v.norm());
    return norms;
}

inline std::vector<double> edge_lengths(const TangentPolytope& poly) {
    std::vector<double> lengths;
    lengths.reserve(poly.edges.size());
    for (const std::array<int, 2>& e : poly.edges)
        lengths.push_back((poly.vertices[e[0]] - poly.vertices[e[1]]).norm());
    return lengths;
}

/// |cross ratio| of four points on S^1 via complex arithmetic; a Moebius
/// invariant computed without any library transform code.
inline double cross_ratio_s1(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                             const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
    const std::complex<double> z1(a.x(), a.y()), z2(b.x(), b.y()), z3(c.x(), c.y()),
        z4(d.x(), d.y());
    return std::abs((z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3)));
}

inline double max_abs_gram_diff(const std::vector<SpherePoint>& a,
                                const std::vector<SpherePoint>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            worst = std::max(worst, std::abs(a[i].coords().dot(a[j].coords()) -
                                             b[i].coords().dot(b[j].coords())));
    return worst;
}

}  // namespace support
