#pragma once

#include <Eigen/Dense>

#include <utility>

namespace moebius {

/// Vector of R^{d+2} carrying the Lorentzian form
///   <x,y> = -x.time * y.time + x.space . y.space
/// with the space part living in R^{d+1}.
struct MinkowskiVector {
    double time = 0.0;
    Eigen::VectorXd space;

    MinkowskiVector() = default;
    MinkowskiVector(double time, Eigen::VectorXd space) : time(time), space(std::move(space)) {}

    /// Spatial dimension d of the ideal boundary S^d; space has length d+1.
    int dim() const { return static_cast<int>(space.size()) - 1; }

    /// Homogeneous coordinates [time, space...] as one column of R^{d+2}.
    Eigen::VectorXd homogeneous() const {
        Eigen::VectorXd h(space.size() + 1);
        h(0) = time;
        h.tail(space.size()) = space;
        return h;
    }

    static MinkowskiVector from_homogeneous(const Eigen::VectorXd& h) {
        return {h(0), h.tail(h.size() - 1)};
    }

    MinkowskiVector operator+(const MinkowskiVector& o) const {
        return {time + o.time, space + o.space};
    }
    MinkowskiVector operator-(const MinkowskiVector& o) const {
        return {time - o.time, space - o.space};
    }
    MinkowskiVector operator-() const { return {-time, -space}; }
    MinkowskiVector operator*(double a) const { return {time * a, space * a}; }
    MinkowskiVector operator/(double a) const { return {time / a, space / a}; }
};

inline MinkowskiVector operator*(double a, const MinkowskiVector& v) { return v * a; }

inline double minkowski_inner(const MinkowskiVector& a, const MinkowskiVector& b) {
    return -a.time * b.time + a.space.dot(b.space);
}

inline double minkowski_norm2(const MinkowskiVector& v) { return minkowski_inner(v, v); }

/// The form matrix J = diag(-1, 1, ..., 1) of size (d+2) x (d+2).
inline Eigen::MatrixXd minkowski_form(int dim) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(dim + 2, dim + 2);
    j(0, 0) = -1.0;
    return j;
}

}  // namespace moebius
