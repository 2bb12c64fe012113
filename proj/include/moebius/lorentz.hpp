#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>

#include "moebius/errors.hpp"
#include "moebius/minkowski.hpp"
#include "moebius/models.hpp"

namespace moebius {

/// Orthochronous element of O(d+1,1): M^T J M = J and M_00 > 0.  Acts
/// linearly on homogeneous coordinates, hence as an isometry of H^{d+1}
/// and as a Moebius transformation of S^d.  Each coset of O(d+1,1)/{+-1}
/// has exactly one orthochronous representative, so this class realizes
/// the Moebius group concretely.  Reflections (det = -1) are permitted.
class LorentzMatrix {
  public:
    explicit LorentzMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols() || entries_.rows() < 3)
            throw DegenerateInput("LorentzMatrix: need a square matrix of size >= 3");
        const Eigen::MatrixXd j = minkowski_form(dim());
        const double defect = (entries_.transpose() * j * entries_ - j).cwiseAbs().maxCoeff();
        // Same tolerance scaling as HyperboloidPoint: the products in
        // M^T J M cancel at the scale M_00^2.
        const double scale = std::max(1.0, entries_(0, 0) * entries_(0, 0));
        if (defect > tol::kLorentz * scale)
            throw DegenerateInput("LorentzMatrix: M^T J M != J, defect = " +
                                  std::to_string(defect));
        if (!(entries_(0, 0) > 0.0))
            throw DegenerateInput("LorentzMatrix: not orthochronous (M_00 <= 0)");
    }

    static LorentzMatrix identity(int dim) {
        return LorentzMatrix(Eigen::MatrixXd::Identity(dim + 2, dim + 2));
    }

    /// Pure boost of the given rapidity along a unit direction w of R^{d+1};
    /// translates H^{d+1} by `rapidity` along the geodesic through the apex
    /// with velocity (0, w).  Maps the apex to (cosh r, sinh r * w).
    static LorentzMatrix boost(const Eigen::VectorXd& direction, double rapidity) {
        if (std::abs(direction.norm() - 1.0) > 1e-9)
            throw DegenerateInput("LorentzMatrix::boost: direction must be unit");
        if (std::abs(rapidity) > tol::kRapidityCap)
            throw IllConditioned("LorentzMatrix::boost: |rapidity| exceeds the cap " +
                                 std::to_string(tol::kRapidityCap));
        const int n = static_cast<int>(direction.size());
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1);
        const double c = std::cosh(rapidity);
        const double s = std::sinh(rapidity);
        m(0, 0) = c;
        m.block(0, 1, 1, n) = s * direction.transpose();
        m.block(1, 0, n, 1) = s * direction;
        m.block(1, 1, n, n) += (c - 1.0) * direction * direction.transpose();
        return LorentzMatrix(std::move(m));
    }

    /// Embeds an orthogonal transformation of R^{d+1} (rotation or
    /// reflection of the sphere) as the block diag(1, Q).
    static LorentzMatrix rotation(const Eigen::MatrixXd& orthogonal) {
        const int n = static_cast<int>(orthogonal.rows());
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1);
        m.block(1, 1, n, n) = orthogonal;
        return LorentzMatrix(std::move(m));
    }

    const Eigen::MatrixXd& entries() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()) - 2; }

    /// Group inverse, J M^T J; exact up to roundoff, no linear solve.
    LorentzMatrix inverse() const {
        const Eigen::MatrixXd j = minkowski_form(dim());
        return LorentzMatrix(j * entries_.transpose() * j);
    }

    friend LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) {
        return LorentzMatrix(a.entries_ * b.entries_);
    }

  private:
    Eigen::MatrixXd entries_;
};

/// Image of a hyperboloid point under the isometry M.
inline HyperboloidPoint apply_lorentz(const LorentzMatrix& m, const HyperboloidPoint& x) {
    return HyperboloidPoint(
        MinkowskiVector::from_homogeneous(m.entries() * x.vec().homogeneous()));
}

struct IdealImage {
    IdealVector point;
    /// Time component of M l before renormalization.  Positive for every
    /// orthochronous M; the log of this factor is the horosphere offset
    /// shift under the isometry.
    double rescale;
};

/// Image of a lightlike lift under M, rescaled back to time = 1.  The
/// spatial part is renormalized onto the sphere; it sits within roundoff
/// of it already because M preserves the cone.
inline IdealImage apply_lorentz(const LorentzMatrix& m, const IdealVector& l) {
    const Eigen::VectorXd h = m.entries() * l.vec().homogeneous();
    if (h(0) <= 1e-14)
        throw NumericalFailure(
            "apply_lorentz: lightlike image has nonpositive time component; "
            "the matrix does not preserve the future cone");
    Eigen::VectorXd v = h.tail(h.size() - 1);
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NumericalFailure("apply_lorentz: lightlike image degenerated");
    return IdealImage{IdealVector(SpherePoint(v / norm)), h(0)};
}

/// The Moebius action of M on the sphere: lift, act, dehomogenize.
inline SpherePoint induced_moebius(const LorentzMatrix& m, const SpherePoint& v) {
    return apply_lorentz(m, IdealVector(v)).point.to_sphere();
}

/// The unique pure boost taking x to the apex (1, 0, ..., 0); symmetric as
/// a matrix, which fixes the rotational freedom of "some isometry moving x
/// to the origin" canonically.
inline LorentzMatrix boost_to_origin(const HyperboloidPoint& x) {
    if (x.time() > std::cosh(tol::kRapidityCap))
        throw IllConditioned("boost_to_origin: point beyond the rapidity cap");
    const double s = x.space().norm();
    if (s == 0.0) return LorentzMatrix::identity(x.dim());
    return LorentzMatrix::boost(x.space() / s, -std::asinh(s));
}

}  // namespace moebius
