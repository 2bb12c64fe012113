#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "moebius/errors.hpp"
#include "moebius/minkowski.hpp"

namespace moebius {

namespace tol {
inline constexpr double kUnitSphere = 1e-12;       // |norm - 1| for sphere points
inline constexpr double kHyperboloid = 1e-10;      // |<x,x> + 1| for hyperboloid points
inline constexpr double kLorentz = 1e-10;          // ||M^T J M - J|| for group membership
inline constexpr double kBoundaryGuard = 1e-15;    // ball radius overflow guard
inline constexpr double kRapidityCap = 40.0;       // beyond this cosh destroys <x,x> = -1
}  // namespace tol

/// Point of the ideal boundary S^d, stored as a unit vector of R^{d+1}.
class SpherePoint {
  public:
    explicit SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
        if (coords_.size() < 2)
            throw DegenerateInput("SpherePoint: need at least 2 coordinates (d >= 1)");
        if (std::abs(coords_.norm() - 1.0) > tol::kUnitSphere)
            throw DegenerateInput("SpherePoint: coordinates are not a unit vector, |norm-1| = " +
                                  std::to_string(std::abs(coords_.norm() - 1.0)));
    }

    const Eigen::VectorXd& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()) - 1; }

  private:
    Eigen::VectorXd coords_;
};

/// Lightlike lift (1, v) of an ideal point; the homogeneous representative
/// of v on the projective quadric, normalized to time = 1.
class IdealVector {
  public:
    explicit IdealVector(const SpherePoint& v) : vec_(1.0, v.coords()) {}

    const MinkowskiVector& vec() const { return vec_; }
    int dim() const { return vec_.dim(); }
    SpherePoint to_sphere() const { return SpherePoint(vec_.space); }

  private:
    MinkowskiVector vec_;
};

/// Point of H^{d+1} in the hyperboloid model: <x,x> = -1, time >= 1.
/// This is the computational home; the other models are views of it.
class HyperboloidPoint {
  public:
    explicit HyperboloidPoint(MinkowskiVector x) : vec_(std::move(x)) {
        // The check tolerance scales with time^2: that is the size of the
        // cancellation in <x,x> for far points, which the rapidity cap
        // bounds but does not remove.
        const double scale = std::max(1.0, vec_.time * vec_.time);
        if (std::abs(minkowski_norm2(vec_) + 1.0) > tol::kHyperboloid * scale)
            throw DegenerateInput("HyperboloidPoint: <x,x> != -1, defect = " +
                                  std::to_string(std::abs(minkowski_norm2(vec_) + 1.0)));
        if (vec_.time < 1.0 - tol::kHyperboloid)
            throw DegenerateInput("HyperboloidPoint: time component below 1 (wrong sheet)");
    }

    static HyperboloidPoint apex(int dim) {
        return HyperboloidPoint(MinkowskiVector(1.0, Eigen::VectorXd::Zero(dim + 1)));
    }

    const MinkowskiVector& vec() const { return vec_; }
    double time() const { return vec_.time; }
    const Eigen::VectorXd& space() const { return vec_.space; }
    int dim() const { return vec_.dim(); }

    /// Distance to the apex, also the magnitude of the boost taking the
    /// point to the apex.
    double rapidity() const { return std::acosh(std::max(1.0, vec_.time)); }

  private:
    MinkowskiVector vec_;
};

/// Poincare ball model point: vector of R^{d+1} with norm < 1.
class BallPoint {
  public:
    explicit BallPoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
        if (coords_.norm() >= 1.0)
            throw DegenerateInput("BallPoint: norm must be < 1, got " +
                                  std::to_string(coords_.norm()));
    }

    static BallPoint origin(int dim) { return BallPoint(Eigen::VectorXd::Zero(dim + 1)); }

    const Eigen::VectorXd& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()) - 1; }

  private:
    Eigen::VectorXd coords_;
};

/// Upper half-space model point: height x0 > 0 plus a horizontal vector
/// of R^d.
class HalfSpacePoint {
  public:
    HalfSpacePoint(double height, Eigen::VectorXd horizontal)
        : height_(height), horizontal_(std::move(horizontal)) {
        if (!(height_ > 0.0))
            throw DegenerateInput("HalfSpacePoint: height must be > 0");
    }

    double height() const { return height_; }
    const Eigen::VectorXd& horizontal() const { return horizontal_; }
    int dim() const { return static_cast<int>(horizontal_.size()); }

  private:
    double height_;
    Eigen::VectorXd horizontal_;
};

// --- model conversions ---------------------------------------------------

inline HyperboloidPoint ball_to_hyperboloid(const BallPoint& p) {
    const double r2 = p.coords().squaredNorm();
    if (r2 >= 1.0 - tol::kBoundaryGuard)
        throw DegenerateInput("ball_to_hyperboloid: point too close to the boundary");
    const double s = 1.0 / (1.0 - r2);
    return HyperboloidPoint(MinkowskiVector((1.0 + r2) * s, 2.0 * s * p.coords()));
}

inline BallPoint hyperboloid_to_ball(const HyperboloidPoint& x) {
    return BallPoint(x.space() / (1.0 + x.time()));
}

/// Klein (projective) coordinates k, |k| < 1, to Poincare ball coordinates.
/// Fixes the center and every boundary direction.
inline BallPoint klein_to_ball(const Eigen::VectorXd& k) {
    const double n2 = k.squaredNorm();
    if (n2 >= 1.0)
        throw DegenerateInput("klein_to_ball: Klein coordinates must have norm < 1");
    return BallPoint(k / (1.0 + std::sqrt(1.0 - n2)));
}

inline Eigen::VectorXd ball_to_klein(const BallPoint& p) {
    return 2.0 * p.coords() / (1.0 + p.coords().squaredNorm());
}

/// Ball -> upper half space by the involutive inversion centered at -e1 with
/// radius sqrt(2):  sigma(p) = 2 (p + e1) / |p + e1|^2 - e1.
/// Sends -e1 to infinity, +e1 to the horizontal origin and the ball center
/// to height 1.  The image's first coordinate is the height, the remaining d
/// coordinates are horizontal.
inline HalfSpacePoint ball_to_halfspace(const BallPoint& p) {
    Eigen::VectorXd shifted = p.coords();
    shifted(0) += 1.0;
    const double n2 = shifted.squaredNorm();
    if (n2 <= tol::kBoundaryGuard)
        throw DegenerateInput("ball_to_halfspace: point coincides with the pole -e1");
    Eigen::VectorXd image = 2.0 * shifted / n2;
    image(0) -= 1.0;
    return HalfSpacePoint(image(0), image.tail(image.size() - 1));
}

/// Inverse of ball_to_halfspace (the inversion is an involution).
inline BallPoint halfspace_to_ball(const HalfSpacePoint& h) {
    Eigen::VectorXd q(h.dim() + 1);
    q(0) = h.height() + 1.0;
    q.tail(h.dim()) = h.horizontal();
    const double n2 = q.squaredNorm();
    Eigen::VectorXd image = 2.0 * q / n2;
    image(0) -= 1.0;
    return BallPoint(image);
}

// --- geodesics and distance ----------------------------------------------

/// Point at arc length s along the geodesic with unit tangent u at x:
/// g(s) = cosh(s) x + sinh(s) u.
inline HyperboloidPoint geodesic_point(const HyperboloidPoint& x, const MinkowskiVector& u,
                                       double s) {
    const double scale = std::max(1.0, x.time() * x.time());
    if (std::abs(minkowski_inner(u, x.vec())) > tol::kHyperboloid * scale)
        throw DegenerateInput("geodesic_point: direction is not tangent at x");
    if (std::abs(minkowski_norm2(u) - 1.0) > tol::kHyperboloid * scale)
        throw DegenerateInput("geodesic_point: direction is not unit");
    if (std::abs(s) > tol::kRapidityCap)
        throw IllConditioned("geodesic_point: |s| exceeds the rapidity cap " +
                             std::to_string(tol::kRapidityCap));
    return HyperboloidPoint(std::cosh(s) * x.vec() + std::sinh(s) * u);
}

inline double hyperbolic_distance(const HyperboloidPoint& x, const HyperboloidPoint& y) {
    return std::acosh(std::max(1.0, -minkowski_inner(x.vec(), y.vec())));
}

inline double hyperbolic_distance(const BallPoint& p, const BallPoint& q) {
    const double a = (p.coords() - q.coords()).squaredNorm();
    const double b = (1.0 - p.coords().squaredNorm()) * (1.0 - q.coords().squaredNorm());
    return std::acosh(1.0 + 2.0 * a / b);
}

inline double hyperbolic_distance(const HalfSpacePoint& x, const HalfSpacePoint& y) {
    const double a = (x.horizontal() - y.horizontal()).squaredNorm() +
                     (x.height() - y.height()) * (x.height() - y.height());
    return std::acosh(1.0 + a / (2.0 * x.height() * y.height()));
}

}  // namespace moebius
