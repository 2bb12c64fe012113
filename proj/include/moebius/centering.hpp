#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "moebius/errors.hpp"
#include "moebius/horosphere.hpp"
#include "moebius/lorentz.hpp"
#include "moebius/minkowski.hpp"
#include "moebius/models.hpp"

namespace moebius {

/// n >= 3 pairwise distinct ideal points of S^d.
class PointConfiguration {
  public:
    PointConfiguration(int dim, std::vector<SpherePoint> points, double separation_tol = 1e-9)
        : dim_(dim), points_(std::move(points)) {
        if (dim_ < 1) throw DegenerateInput("PointConfiguration: dimension must be >= 1");
        if (points_.size() < 3)
            throw DegenerateInput("PointConfiguration: need n >= 3 distinct points, got n = " +
                                  std::to_string(points_.size()));
        for (const SpherePoint& p : points_)
            if (p.dim() != dim_)
                throw DegenerateInput("PointConfiguration: point dimension mismatch");
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if ((points_[i].coords() - points_[j].coords()).norm() < separation_tol)
                    throw DegenerateInput(
                        "PointConfiguration: points " + std::to_string(i) + " and " +
                        std::to_string(j) + " closer than the separation tolerance " +
                        std::to_string(separation_tol));
    }

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<SpherePoint>& points() const { return points_; }

  private:
    int dim_;
    std::vector<SpherePoint> points_;
};

/// Moebius image of every point of a configuration, preserving order.
inline PointConfiguration transform_configuration(const LorentzMatrix& m,
                                                  const PointConfiguration& cfg) {
    std::vector<SpherePoint> moved;
    moved.reserve(cfg.size());
    for (const SpherePoint& p : cfg.points()) moved.push_back(induced_moebius(m, p));
    return PointConfiguration(cfg.dim(), std::move(moved));
}

struct SolverConfig {
    double grad_tol = 1e-12;
    int max_iters = 100;
    double armijo_slope = 1e-4;
    double backtrack_factor = 0.5;
    double rapidity_cap = tol::kRapidityCap;

    void validate() const {
        if (!(grad_tol > 0.0) || !(armijo_slope > 0.0) || !(rapidity_cap > 0.0) || max_iters <= 0)
            throw DegenerateInput("SolverConfig: all parameters must be positive");
        if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
            throw DegenerateInput("SolverConfig: backtrack_factor must lie in (0,1)");
    }
};

struct CenteringResult {
    HyperboloidPoint minimizer;
    /// Pure boost moving the minimizer to the apex; composing any rotation
    /// on the left is the residual freedom the boost choice ties off.
    LorentzMatrix transform;
    std::vector<SpherePoint> centered_points;
    /// Norm of the centered-point sum; the certificate that the transform
    /// centers the configuration.
    double residual = 0.0;
    int iterations = 0;
    /// Strictly decreasing accepted objective values, starting from the
    /// value at the apex.  Late steps whose decrease falls below double
    /// resolution refine the iterate without extending this list.
    std::vector<double> objective_history;
};

// --- objective and derivatives ---------------------------------------------

/// F(x) = sum_j log(-<x, l_j>), the distance sum to the horospheres through
/// the configuration points with all offsets zero.
inline double objective(const PointConfiguration& cfg, const HyperboloidPoint& x) {
    double sum = 0.0;
    for (const SpherePoint& v : cfg.points())
        sum += std::log(x.time() - x.space().dot(v.coords()));
    return sum;
}

/// Riemannian gradient of F at x: n x + sum_j l_j / <x, l_j>, tangent at x.
inline MinkowskiVector objective_gradient(const PointConfiguration& cfg,
                                          const HyperboloidPoint& x) {
    MinkowskiVector g = static_cast<double>(cfg.size()) * x.vec();
    for (const SpherePoint& v : cfg.points()) {
        const MinkowskiVector l(1.0, v.coords());
        g = g + l / minkowski_inner(x.vec(), l);
    }
    return g;
}

/// Orthonormal basis of the tangent space at x, obtained by boosting the
/// apex basis (0, e_i) to x and polishing with modified Gram-Schmidt.
class TangentBasis {
  public:
    explicit TangentBasis(const HyperboloidPoint& x) : base_(x) {
        const LorentzMatrix pull = boost_to_origin(x).inverse();
        const int n = x.dim() + 1;
        vectors_.reserve(n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd h = Eigen::VectorXd::Zero(n + 1);
            h(i + 1) = 1.0;
            MinkowskiVector b = MinkowskiVector::from_homogeneous(pull.entries() * h);
            b = b + minkowski_inner(b, x.vec()) * x.vec();
            for (const MinkowskiVector& prev : vectors_)
                b = b - minkowski_inner(b, prev) * prev;
            const double n2 = minkowski_norm2(b);
            if (!(n2 > 0.0))
                throw NumericalFailure("TangentBasis: transported basis degenerated");
            vectors_.push_back(b / std::sqrt(n2));
        }
    }

    int size() const { return static_cast<int>(vectors_.size()); }
    const MinkowskiVector& vec(int i) const { return vectors_[i]; }
    const HyperboloidPoint& base() const { return base_; }

    Eigen::VectorXd coordinates(const MinkowskiVector& tangent) const {
        Eigen::VectorXd c(size());
        for (int i = 0; i < size(); ++i) c(i) = minkowski_inner(tangent, vectors_[i]);
        return c;
    }

    MinkowskiVector from_coordinates(const Eigen::VectorXd& c) const {
        MinkowskiVector v(0.0, Eigen::VectorXd::Zero(base_.dim() + 1));
        for (int i = 0; i < size(); ++i) v = v + c(i) * vectors_[i];
        return v;
    }

  private:
    HyperboloidPoint base_;
    std::vector<MinkowskiVector> vectors_;
};

/// Hessian of F at x as a bilinear form on the tangent space:
/// n <w1,w2> - sum_j <w1,g_j><w2,g_j> with g_j the unit term gradients.
/// Positive definite whenever the configuration has n >= 3 distinct points.
class ObjectiveHessian {
  public:
    ObjectiveHessian(const PointConfiguration& cfg, const HyperboloidPoint& x)
        : count_(cfg.size()) {
        term_gradients_.reserve(cfg.points().size());
        for (const SpherePoint& v : cfg.points())
            term_gradients_.push_back(grad_delta(Horosphere{v, 0.0}, x));
    }

    double operator()(const MinkowskiVector& w1, const MinkowskiVector& w2) const {
        double s = count_ * minkowski_inner(w1, w2);
        for (const MinkowskiVector& g : term_gradients_)
            s -= minkowski_inner(w1, g) * minkowski_inner(w2, g);
        return s;
    }

    /// Matrix of the form in the given tangent basis.
    Eigen::MatrixXd matrix(const TangentBasis& basis) const {
        const int k = basis.size();
        Eigen::MatrixXd h = count_ * Eigen::MatrixXd::Identity(k, k);
        for (const MinkowskiVector& g : term_gradients_) {
            Eigen::VectorXd c(k);
            for (int i = 0; i < k; ++i) c(i) = minkowski_inner(basis.vec(i), g);
            h -= c * c.transpose();
        }
        return h;
    }

  private:
    double count_;
    std::vector<MinkowskiVector> term_gradients_;
};

inline ObjectiveHessian objective_hessian(const PointConfiguration& cfg,
                                          const HyperboloidPoint& x) {
    return ObjectiveHessian(cfg, x);
}

// --- solver -----------------------------------------------------------------

namespace detail {

inline HyperboloidPoint renormalized(const MinkowskiVector& v) {
    const double n2 = -minkowski_norm2(v);
    if (!(n2 > 0.0)) throw NumericalFailure("iterate left the hyperboloid");
    return HyperboloidPoint(v / std::sqrt(n2));
}

struct SolveOutcome {
    HyperboloidPoint minimizer;
    int iterations = 0;
    std::vector<double> history;
};

/// Newton iteration re-anchored at the apex each step: boost the current
/// iterate to the apex, where the tangent basis is the spatial coordinate
/// basis and the gradient of the boosted problem is (0, -sum w_j).  The
/// step is mapped back through the inverse boost; the objective used for
/// the line search is always the original one (offsets drop out of every
/// derivative, so directions agree).
inline SolveOutcome solve_min_distance(const PointConfiguration& cfg,
                                       const SolverConfig& solver) {
    solver.validate();
    const int n = cfg.size();
    const int k = cfg.dim() + 1;

    HyperboloidPoint x = HyperboloidPoint::apex(cfg.dim());
    double fx = objective(cfg, x);
    SolveOutcome out{x, 0, {fx}};
    double grad_norm = 0.0;
    bool polished = false;

    for (int iter = 0; iter <= solver.max_iters; ++iter) {
        const LorentzMatrix boost = boost_to_origin(x);
        const LorentzMatrix pullback = boost.inverse();

        Eigen::VectorXd residual_sum = Eigen::VectorXd::Zero(k);
        Eigen::MatrixXd hess = n * Eigen::MatrixXd::Identity(k, k);
        for (const SpherePoint& v : cfg.points()) {
            const Eigen::VectorXd w = induced_moebius(boost, v).coords();
            residual_sum += w;
            hess -= w * w.transpose();
        }
        grad_norm = residual_sum.norm();
        if (grad_norm <= solver.grad_tol * n) {
            // One extra Newton step when the landing is close to the
            // tolerance, so the returned certificate has real margin.
            const bool comfortable = grad_norm <= 0.01 * solver.grad_tol * n;
            if (comfortable || polished || iter == solver.max_iters) {
                out.minimizer = x;
                return out;
            }
            polished = true;
        }
        if (iter == solver.max_iters) break;

        // Newton step in apex coordinates, gradient direction as fallback.
        Eigen::VectorXd newton = Eigen::VectorXd::Zero(k);
        bool have_newton = false;
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            newton = ldlt.solve(residual_sum);
            have_newton = residual_sum.dot(newton) > 0.0 && newton.allFinite();
        }

        auto advance = [&](const Eigen::VectorXd& dir, double t) {
            const double len = dir.norm();
            const double step = t * len;
            Eigen::VectorXd h(k + 1);
            h(0) = std::cosh(step);
            h.tail(k) = (std::sinh(step) / len) * dir;
            return renormalized(MinkowskiVector::from_homogeneous(pullback.entries() * h));
        };
        auto accept = [&](const HyperboloidPoint& candidate, double fc) {
            if (candidate.time() > std::cosh(solver.rapidity_cap))
                throw IllConditioned(
                    "find_min_distance_point: iterate exceeded the rapidity cap; "
                    "the minimizer is escaping toward the boundary "
                    "(near-coincident points?)");
            x = candidate;
            if (fc < out.history.back()) out.history.push_back(fc);
            fx = fc;
            ++out.iterations;
        };

        // Inside the quadratic basin the per-step decrease drops below the
        // resolution of F long before the gradient reaches its tolerance; a
        // sufficient-decrease test would reject on roundoff noise there, so
        // the full Newton step is taken unconditionally and convergence is
        // measured by the gradient norm alone.
        constexpr double kBasin = 1e-5;
        if (have_newton && newton.norm() <= kBasin) {
            const HyperboloidPoint candidate = advance(newton, 1.0);
            accept(candidate, objective(cfg, candidate));
            continue;
        }

        bool stepped = false;
        for (int attempt = have_newton ? 0 : 1; attempt < 2 && !stepped; ++attempt) {
            const Eigen::VectorXd dir = (attempt == 0) ? newton : (residual_sum / n);
            const double len = dir.norm();
            if (!(len > 0.0)) continue;
            const double slope = -residual_sum.dot(dir);  // dF/dt at t = 0

            double t = std::min(1.0, solver.rapidity_cap / len);
            for (int back = 0; back < 60; ++back) {
                const HyperboloidPoint candidate = advance(dir, t);
                const double fc = objective(cfg, candidate);
                if (fc <= fx + solver.armijo_slope * t * slope) {
                    accept(candidate, fc);
                    stepped = true;
                    break;
                }
                t *= solver.backtrack_factor;
            }
        }
        if (!stepped)
            throw NoConvergence(out.iterations, grad_norm,
                                "find_min_distance_point: line search stalled at gradient norm " +
                                    std::to_string(grad_norm));
    }
    throw NoConvergence(out.iterations, grad_norm,
                        "find_min_distance_point: exceeded max_iters = " +
                            std::to_string(solver.max_iters) + " with gradient norm " +
                            std::to_string(grad_norm));
}

}  // namespace detail

/// The unique point of H^{d+1} minimizing the horospherical distance sum of
/// the configuration.  Newton iteration with exponential-map retraction and
/// Armijo backtracking, started at the apex.
inline HyperboloidPoint find_min_distance_point(const PointConfiguration& cfg,
                                                const SolverConfig& solver = {}) {
    return detail::solve_min_distance(cfg, solver).minimizer;
}

/// Centers the configuration: finds the minimizer, boosts it to the apex
/// and applies the induced Moebius map to every point.  The returned
/// residual |sum T v_j| certifies the centering.
inline CenteringResult center(const PointConfiguration& cfg, const SolverConfig& solver = {}) {
    detail::SolveOutcome outcome = detail::solve_min_distance(cfg, solver);
    const LorentzMatrix transform = boost_to_origin(outcome.minimizer);

    std::vector<SpherePoint> centered;
    centered.reserve(cfg.points().size());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(cfg.dim() + 1);
    for (const SpherePoint& v : cfg.points()) {
        centered.push_back(induced_moebius(transform, v));
        sum += centered.back().coords();
    }
    const double residual = sum.norm();
    if (residual > 10.0 * cfg.size() * solver.grad_tol)
        throw NumericalFailure("center: residual " + std::to_string(residual) +
                               " exceeds 10 n grad_tol after a converged solve");

    return CenteringResult{outcome.minimizer, transform,    std::move(centered),
                           residual,          outcome.iterations, std::move(outcome.history)};
}

/// Gram-matrix discrepancy of two centering results for the same
/// configuration.  Uniqueness up to rotation predicts a tiny value: the
/// centered point sets differ by an isometry of the sphere, which the Gram
/// matrix cannot see.
inline double verify_uniqueness(const PointConfiguration& cfg, const CenteringResult& a,
                                const CenteringResult& b) {
    const std::size_t n = cfg.points().size();
    if (a.centered_points.size() != n || b.centered_points.size() != n)
        throw DegenerateInput("verify_uniqueness: point-count mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double ga = a.centered_points[i].coords().dot(a.centered_points[j].coords());
            const double gb = b.centered_points[i].coords().dot(b.centered_points[j].coords());
            worst = std::max(worst, std::abs(ga - gb));
        }
    return worst;
}

}  // namespace moebius
