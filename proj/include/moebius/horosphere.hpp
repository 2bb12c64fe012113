#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "moebius/errors.hpp"
#include "moebius/lorentz.hpp"
#include "moebius/minkowski.hpp"
#include "moebius/models.hpp"

namespace moebius {

/// Horosphere in H^{d+1}: an ideal point v plus a real offset.  Offset 0
/// selects the horosphere through the apex (ball center); two horospheres
/// through the same ideal point differ by a constant offset, which is all
/// the signed distance function below can see.
struct Horosphere {
    SpherePoint ideal_point;
    double offset = 0.0;
};

/// Signed distance from x to the horosphere h: negative inside (on the
/// ideal-point side), zero on h, positive outside.  In the hyperboloid
/// model this is log(-<x, l_v>) - offset with l_v = (1, v); the argument
/// x.time - x.space . v is positive everywhere on the hyperboloid, so the
/// log never overflows within the rapidity cap.
inline double delta_hyperboloid(const Horosphere& h, const HyperboloidPoint& x) {
    return std::log(x.time() - x.space().dot(h.ideal_point.coords())) - h.offset;
}

/// The same function in Poincare ball coordinates:
/// log(|p - v|^2 / (1 - |p|^2)) - offset.
inline double delta_ball(const Horosphere& h, const BallPoint& p) {
    const double r2 = p.coords().squaredNorm();
    if (r2 >= 1.0 - tol::kBoundaryGuard)
        throw DegenerateInput("delta_ball: point too close to the boundary");
    return std::log((p.coords() - h.ideal_point.coords()).squaredNorm() / (1.0 - r2)) - h.offset;
}

/// Signed distance to the horosphere with ideal point infinity in the
/// half-space model, where horospheres are the horizontal planes:
/// -log(height) - offset.  Along a vertical geodesic this is exactly
/// linear, the degenerate case of the convexity dichotomy.  Under the
/// ball -> half-space map of models.hpp, infinity is the image of -e1, and
/// this equals delta_ball for the horosphere at -e1 with the same offset.
inline double delta_halfspace_at_infinity(const HalfSpacePoint& x, double offset) {
    return -std::log(x.height()) - offset;
}

/// Riemannian gradient of delta at x, a unit tangent vector at x:
/// l_v / <x, l_v> + x.  Points along the geodesic away from v.
inline MinkowskiVector grad_delta(const Horosphere& h, const HyperboloidPoint& x) {
    const MinkowskiVector l(1.0, h.ideal_point.coords());
    return l / minkowski_inner(x.vec(), l) + x.vec();
}

/// Hessian of delta at x as a bilinear form on the tangent space:
/// Hess(w1, w2) = <w1, w2> - <w1, grad><w2, grad>.
/// Positive semidefinite with kernel exactly the gradient direction, which
/// encodes both the strict convexity of delta along geodesics and its
/// linearity along geodesics ending at the ideal point.
class BusemannHessian {
  public:
    BusemannHessian(const Horosphere& h, const HyperboloidPoint& x) : grad_(grad_delta(h, x)) {}

    double operator()(const MinkowskiVector& w1, const MinkowskiVector& w2) const {
        return minkowski_inner(w1, w2) - minkowski_inner(w1, grad_) * minkowski_inner(w2, grad_);
    }

    const MinkowskiVector& gradient() const { return grad_; }

  private:
    MinkowskiVector grad_;
};

inline BusemannHessian hess_delta(const Horosphere& h, const HyperboloidPoint& x) {
    return BusemannHessian(h, x);
}

/// Riemannian gradient of delta_ball in ball coordinates (inverse metric
/// (1-|p|^2)^2/4 applied to the Euclidean gradient).  At the origin this is
/// exactly -v/2, a unit vector of the ball metric.
inline Eigen::VectorXd grad_delta_ball(const Horosphere& h, const BallPoint& p) {
    const double r2 = p.coords().squaredNorm();
    if (r2 >= 1.0 - tol::kBoundaryGuard)
        throw DegenerateInput("grad_delta_ball: point too close to the boundary");
    const Eigen::VectorXd diff = p.coords() - h.ideal_point.coords();
    const Eigen::VectorXd euclidean = 2.0 * diff / diff.squaredNorm() + 2.0 * p.coords() / (1.0 - r2);
    const double factor = (1.0 - r2) * (1.0 - r2) / 4.0;
    return factor * euclidean;
}

/// Pushes a horosphere through the isometry M so that the signed distance
/// is equivariant: delta(h, x) = delta(transform_horosphere(M, h), M x).
/// The ideal point moves by the Moebius action and the offset absorbs the
/// log of the lightlike rescale factor.
inline Horosphere transform_horosphere(const LorentzMatrix& m, const Horosphere& h) {
    const IdealImage image = apply_lorentz(m, IdealVector(h.ideal_point));
    return Horosphere{image.point.to_sphere(), h.offset - std::log(image.rescale)};
}

}  // namespace moebius
