#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "moebius/lorentz.hpp"
#include "moebius/models.hpp"

namespace moebius {

/// Seeded generators used by the test-polytope perturbations, the CLI and
/// the test suites.  std::mt19937_64 output is specified by the standard
/// and the mappings below avoid std::uniform_real_distribution, so a seed
/// produces the same stream on every platform.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline double gaussian(Rng& rng) {
    // Box-Muller; one value per pair of draws keeps the stream stateless.
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline Eigen::VectorXd gaussian_vector(Rng& rng, int size) {
    Eigen::VectorXd v(size);
    for (int i = 0; i < size; ++i) v(i) = gaussian(rng);
    return v;
}

inline SpherePoint random_sphere_point(Rng& rng, int dim) {
    Eigen::VectorXd v = gaussian_vector(rng, dim + 1);
    while (v.norm() < 1e-6) v = gaussian_vector(rng, dim + 1);
    return SpherePoint(v / v.norm());
}

/// Haar-ish random rotation of R^n: QR of a Gaussian matrix with the sign
/// convention that makes R's diagonal positive, determinant fixed to +1.
inline Eigen::MatrixXd random_rotation(Rng& rng, int n) {
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gaussian(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0.0) q.col(i) = -q.col(i);
    if (q.determinant() < 0.0) q.col(0) = -q.col(0);
    return q;
}

/// Random sphere-fixing projective transform: rotation composed with a
/// boost of rapidity drawn uniformly from [0, max_rapidity].
inline LorentzMatrix random_sphere_fixing_transform(Rng& rng, int dim, double max_rapidity) {
    const double rapidity = uniform(rng, 0.0, max_rapidity);
    const SpherePoint direction = random_sphere_point(rng, dim);
    const LorentzMatrix boost = LorentzMatrix::boost(direction.coords(), rapidity);
    const LorentzMatrix rot = LorentzMatrix::rotation(random_rotation(rng, dim + 1));
    return rot * boost;
}

/// Random point of H^{d+1} within the given distance of the apex.
inline HyperboloidPoint random_hyperboloid_point(Rng& rng, int dim, double max_rapidity) {
    const double r = uniform(rng, 0.0, max_rapidity);
    const SpherePoint direction = random_sphere_point(rng, dim);
    return HyperboloidPoint(
        MinkowskiVector(std::cosh(r), std::sinh(r) * direction.coords()));
}

/// Random unit tangent vector at x, by projecting a Gaussian ambient vector
/// onto the tangent space and normalizing in the induced metric.
inline MinkowskiVector random_unit_tangent(Rng& rng, const HyperboloidPoint& x) {
    for (;;) {
        MinkowskiVector w(gaussian(rng), gaussian_vector(rng, x.dim() + 1));
        w = w + minkowski_inner(w, x.vec()) * x.vec();  // tangent projection
        const double n2 = minkowski_norm2(w);
        if (n2 > 1e-12) return w / std::sqrt(n2);
    }
}

}  // namespace moebius
