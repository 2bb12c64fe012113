#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "moebius/centering.hpp"
#include "moebius/errors.hpp"
#include "moebius/lorentz.hpp"
#include "moebius/models.hpp"
#include "moebius/random.hpp"

namespace moebius {

namespace tol {
inline constexpr double kEdgeTangency = 1e-8;  // |dist(edge line, origin) - 1|
inline constexpr double kConvexity = 1e-9;     // vertex excess beyond a face plane
}  // namespace tol

/// Convex 3-polytope with every edge tangent to the unit sphere.  Faces are
/// index cycles, counterclockwise seen from outside, stored with the
/// smallest index first; edges are derived from the faces and sorted.
struct TangentPolytope {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::vector<int>> faces;
    std::vector<std::array<int, 2>> edges;
    std::vector<SpherePoint> tangency_points;  // one per edge, same order
    double edge_tol = tol::kEdgeTangency;
    double max_tangency_violation = 0.0;
};

/// Foot of the perpendicular from the origin to the line through p and q,
/// which is where the edge touches the unit sphere.
inline SpherePoint tangency_point(const Eigen::Vector3d& p, const Eigen::Vector3d& q,
                                  double edge_tol = tol::kEdgeTangency) {
    const Eigen::Vector3d d = q - p;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) throw DegenerateInput("tangency_point: edge endpoints coincide");
    const double t = -p.dot(d) / len2;
    const Eigen::Vector3d foot = p + t * d;
    const double deviation = std::abs(foot.norm() - 1.0);
    if (deviation > edge_tol)
        throw NotTangent(deviation, "edge line at distance " + std::to_string(foot.norm()) +
                                        " from the origin, not 1");
    if (!(t > 0.0 && t < 1.0))
        throw TangencyOutsideEdge(t, "tangency foot at line parameter " + std::to_string(t) +
                                         ", outside the open edge segment");
    return SpherePoint(foot / foot.norm());
}

struct ValidationIssue {
    std::string kind;  // "structure" | "face_orientation" | "convexity" |
                       // "not_tangent" | "tangency_outside_edge"
    int face = -1;
    std::array<int, 2> edge{-1, -1};
    double value = 0.0;
    std::string message;
};

struct ValidationReport {
    bool structure_ok = true;
    bool convex = true;
    bool tangent = true;
    double max_tangency_violation = 0.0;
    double max_convexity_violation = 0.0;
    std::vector<ValidationIssue> issues;

    bool ok() const { return structure_ok && convex && tangent; }

    std::string summary(std::size_t max_items = 5) const {
        if (ok()) return "valid";
        std::string s;
        for (std::size_t i = 0; i < issues.size() && i < max_items; ++i)
            s += issues[i].kind + ": " + issues[i].message + "; ";
        if (issues.size() > max_items)
            s += "(" + std::to_string(issues.size() - max_items) + " more)";
        return s;
    }
};

namespace detail {

/// Undirected edges from the face cycles, sorted; records manifoldness
/// problems instead of throwing.
inline std::vector<std::array<int, 2>> derive_edges(std::size_t vertex_count,
                                                    const std::vector<std::vector<int>>& faces,
                                                    ValidationReport* report) {
    std::map<std::array<int, 2>, int> undirected;
    std::set<std::array<int, 2>> directed;
    auto issue = [&](const std::string& msg) {
        if (!report) return;
        report->structure_ok = false;
        report->issues.push_back({"structure", -1, {-1, -1}, 0.0, msg});
    };

    for (std::size_t f = 0; f < faces.size(); ++f) {
        const std::vector<int>& cycle = faces[f];
        if (cycle.size() < 3) {
            issue("face " + std::to_string(f) + " has fewer than 3 vertices");
            continue;
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int a = cycle[i];
            const int b = cycle[(i + 1) % cycle.size()];
            if (a < 0 || b < 0 || a >= static_cast<int>(vertex_count) ||
                b >= static_cast<int>(vertex_count)) {
                issue("face " + std::to_string(f) + " references a vertex out of range");
                continue;
            }
            if (a == b) {
                issue("face " + std::to_string(f) + " repeats vertex " + std::to_string(a));
                continue;
            }
            if (!directed.insert({a, b}).second)
                issue("directed edge (" + std::to_string(a) + "," + std::to_string(b) +
                      ") appears twice; faces are not consistently oriented");
            ++undirected[{std::min(a, b), std::max(a, b)}];
        }
    }

    std::vector<std::array<int, 2>> edges;
    edges.reserve(undirected.size());
    for (const auto& [edge, count] : undirected) {
        if (count != 2)
            issue("edge (" + std::to_string(edge[0]) + "," + std::to_string(edge[1]) +
                  ") belongs to " + std::to_string(count) + " faces, expected 2");
        edges.push_back(edge);
    }

    const long euler = static_cast<long>(vertex_count) - static_cast<long>(edges.size()) +
                       static_cast<long>(faces.size());
    if (euler != 2) issue("Euler characteristic V-E+F = " + std::to_string(euler) + ", not 2");
    return edges;
}

inline Eigen::Vector3d newell_normal(const std::vector<Eigen::Vector3d>& vertices,
                                     const std::vector<int>& cycle) {
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Eigen::Vector3d& a = vertices[cycle[i]];
        const Eigen::Vector3d& b = vertices[cycle[(i + 1) % cycle.size()]];
        n += a.cross(b);
    }
    return n;
}

/// Rotates the cycle so the smallest vertex index comes first, preserving
/// the cyclic order; makes idempotence checks well defined.
inline std::vector<int> canonical_rotation(const std::vector<int>& cycle) {
    if (cycle.empty()) return cycle;
    const auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::vector<int> out(smallest, cycle.end());
    out.insert(out.end(), cycle.begin(), smallest);
    return out;
}

}  // namespace detail

/// Checks every TangentPolytope invariant on raw mesh data, collecting all
/// violations instead of stopping at the first.
inline ValidationReport validate(const std::vector<Eigen::Vector3d>& vertices,
                                 const std::vector<std::vector<int>>& faces,
                                 double edge_tol = tol::kEdgeTangency) {
    ValidationReport report;
    const std::vector<std::array<int, 2>> edges =
        detail::derive_edges(vertices.size(), faces, &report);

    for (std::size_t f = 0; f < faces.size(); ++f) {
        const std::vector<int>& cycle = faces[f];
        if (cycle.size() < 3) continue;
        bool in_range = true;
        for (int idx : cycle)
            if (idx < 0 || idx >= static_cast<int>(vertices.size())) in_range = false;
        if (!in_range) continue;

        // collinear consecutive triples make the cycle degenerate
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const Eigen::Vector3d& a = vertices[cycle[i]];
            const Eigen::Vector3d& b = vertices[cycle[(i + 1) % cycle.size()]];
            const Eigen::Vector3d& c = vertices[cycle[(i + 2) % cycle.size()]];
            const double area = (b - a).cross(c - b).norm();
            if (area <= 1e-12 * (b - a).norm() * (c - b).norm()) {
                report.structure_ok = false;
                report.issues.push_back({"structure", static_cast<int>(f), {-1, -1}, area,
                                         "face " + std::to_string(f) +
                                             " has a (nearly) collinear vertex triple"});
                break;
            }
        }

        Eigen::Vector3d normal = detail::newell_normal(vertices, cycle);
        if (normal.norm() <= 1e-14) continue;  // reported as collinear above
        normal.normalize();
        Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
        for (int idx : cycle) centroid += vertices[idx];
        centroid /= static_cast<double>(cycle.size());

        double worst = 0.0;
        int above = 0, below = 0;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            const double excess = normal.dot(vertices[v] - centroid);
            worst = std::max(worst, excess);
            if (excess > tol::kConvexity) ++above;
            if (excess < -tol::kConvexity) ++below;
        }
        if (above > 0) {
            if (below == 0) {
                report.convex = false;
                report.issues.push_back({"face_orientation", static_cast<int>(f), {-1, -1}, worst,
                                         "face " + std::to_string(f) +
                                             " is oriented clockwise seen from outside"});
            } else {
                report.convex = false;
                report.max_convexity_violation =
                    std::max(report.max_convexity_violation, worst);
                report.issues.push_back({"convexity", static_cast<int>(f), {-1, -1}, worst,
                                         "vertices beyond the plane of face " +
                                             std::to_string(f) + " by " + std::to_string(worst)});
            }
        }
    }

    for (const std::array<int, 2>& e : edges) {
        if (e[0] < 0 || e[1] < 0 || e[0] >= static_cast<int>(vertices.size()) ||
            e[1] >= static_cast<int>(vertices.size()))
            continue;
        try {
            tangency_point(vertices[e[0]], vertices[e[1]], edge_tol);
            const Eigen::Vector3d d = vertices[e[1]] - vertices[e[0]];
            const double t = -vertices[e[0]].dot(d) / d.squaredNorm();
            const double dev = std::abs((vertices[e[0]] + t * d).norm() - 1.0);
            report.max_tangency_violation = std::max(report.max_tangency_violation, dev);
        } catch (const NotTangent& err) {
            report.tangent = false;
            report.max_tangency_violation = std::max(report.max_tangency_violation, err.distance);
            report.issues.push_back({"not_tangent", -1, e, err.distance,
                                     "edge (" + std::to_string(e[0]) + "," +
                                         std::to_string(e[1]) + "): " + err.what()});
        } catch (const TangencyOutsideEdge& err) {
            report.tangent = false;
            report.issues.push_back({"tangency_outside_edge", -1, e, err.parameter,
                                     "edge (" + std::to_string(e[0]) + "," +
                                         std::to_string(e[1]) + "): " + err.what()});
        } catch (const DegenerateInput& err) {
            report.structure_ok = false;
            report.issues.push_back({"structure", -1, e, 0.0, err.what()});
        }
    }
    return report;
}

inline ValidationReport validate(const TangentPolytope& poly) {
    return validate(poly.vertices, poly.faces, poly.edge_tol);
}

/// Validates raw mesh data and assembles the TangentPolytope value.
inline TangentPolytope build_polytope(std::vector<Eigen::Vector3d> vertices,
                                      std::vector<std::vector<int>> faces,
                                      double edge_tol = tol::kEdgeTangency) {
    for (std::vector<int>& cycle : faces) cycle = detail::canonical_rotation(cycle);
    const ValidationReport report = validate(vertices, faces, edge_tol);
    if (!report.ok())
        throw DegenerateInput("build_polytope: " + report.summary());

    TangentPolytope poly;
    poly.vertices = std::move(vertices);
    poly.faces = std::move(faces);
    poly.edges = detail::derive_edges(poly.vertices.size(), poly.faces, nullptr);
    poly.tangency_points.reserve(poly.edges.size());
    for (const std::array<int, 2>& e : poly.edges)
        poly.tangency_points.push_back(
            tangency_point(poly.vertices[e[0]], poly.vertices[e[1]], edge_tol));
    poly.edge_tol = edge_tol;
    poly.max_tangency_violation = report.max_tangency_violation;
    return poly;
}

/// Applies a sphere-fixing projective transformation to every vertex:
/// p -> spatial(M (1,p)) / time(M (1,p)).  The combinatorics are untouched;
/// tangency points are recomputed from the moved vertices and revalidated
/// against max(edge_tol, 10 x the input's violation).
inline TangentPolytope apply_projective(const LorentzMatrix& m, const TangentPolytope& poly) {
    if (m.dim() != 2)
        throw DegenerateInput("apply_projective: transform must act on S^2 (4x4 matrix)");
    std::vector<Eigen::Vector3d> moved(poly.vertices.size());
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        Eigen::Vector4d h;
        h(0) = 1.0;
        h.tail(3) = poly.vertices[i];
        const Eigen::Vector4d image = m.entries() * h;
        if (image(0) <= 1e-12)
            throw HitsInfinity(static_cast<int>(i),
                               "vertex " + std::to_string(i) +
                                   " sent to the plane at infinity (time component " +
                                   std::to_string(image(0)) + ")");
        moved[i] = image.tail(3) / image(0);
    }
    const double effective_tol =
        std::max(poly.edge_tol, 10.0 * poly.max_tangency_violation);
    TangentPolytope out = build_polytope(std::move(moved), poly.faces, effective_tol);
    out.edge_tol = poly.edge_tol;
    return out;
}

struct CanonicalReport {
    double barycenter_norm_before = 0.0;
    double barycenter_norm_after = 0.0;
    LorentzMatrix transform;
    double max_tangency_violation = 0.0;
    int iterations = 0;
};

namespace detail {
inline Eigen::Vector3d tangency_barycenter(const TangentPolytope& poly) {
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (const SpherePoint& t : poly.tangency_points) sum += t.coords();
    return sum / static_cast<double>(poly.tangency_points.size());
}
}  // namespace detail

/// Centers the tangency points and applies the resulting boost to the whole
/// polytope, producing the canonical representative of its type: the unique
/// edge-tangent realization (up to isometry) whose tangency barycenter is
/// the origin.
inline std::pair<TangentPolytope, CanonicalReport> canonicalize(const TangentPolytope& poly,
                                                                const SolverConfig& solver = {}) {
    const PointConfiguration cfg(2, poly.tangency_points);
    CenteringResult centering = center(cfg, solver);

    TangentPolytope moved;
    try {
        moved = apply_projective(centering.transform, poly);
    } catch (const HitsInfinity& err) {
        // Impossible for a genuinely edge-tangent input under its centering
        // boost; reaching this means the input data were corrupted.
        throw NumericalFailure(std::string("canonicalize: centering boost hit infinity, "
                                           "input is corrupted: ") +
                               err.what());
    }

    CanonicalReport report{detail::tangency_barycenter(poly).norm(),
                           detail::tangency_barycenter(moved).norm(),
                           centering.transform,
                           moved.max_tangency_violation,
                           centering.iterations};
    const double allowed = std::max(1e-8, 20.0 * solver.grad_tol * cfg.size());
    if (report.barycenter_norm_after > allowed)
        throw NumericalFailure("canonicalize: tangency barycenter norm " +
                               std::to_string(report.barycenter_norm_after) +
                               " after centering");
    return {std::move(moved), std::move(report)};
}

// --- reference solids -------------------------------------------------------

enum class PlatonicKind { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

namespace detail {

/// Recovers the face cycles of a vertex-transitive solid from its outward
/// face normal directions: each face consists of the vertices maximizing
/// the dot product with its normal, ordered counterclockwise around it.
inline std::vector<std::vector<int>> faces_from_normals(
    const std::vector<Eigen::Vector3d>& vertices, const std::vector<Eigen::Vector3d>& normals) {
    std::vector<std::vector<int>> faces;
    faces.reserve(normals.size());
    for (const Eigen::Vector3d& raw : normals) {
        const Eigen::Vector3d n = raw.normalized();
        double best = -1e300;
        for (const Eigen::Vector3d& v : vertices) best = std::max(best, n.dot(v));
        std::vector<int> members;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (n.dot(vertices[i]) >= best - 1e-6) members.push_back(static_cast<int>(i));

        Eigen::Vector3d u1 = n.cross(Eigen::Vector3d::UnitZ());
        if (u1.norm() < 1e-6) u1 = n.cross(Eigen::Vector3d::UnitX());
        u1.normalize();
        const Eigen::Vector3d u2 = n.cross(u1);
        Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
        for (int i : members) centroid += vertices[i];
        centroid /= static_cast<double>(members.size());
        // ascending angle in the right-handed frame (u1, u2, n) runs
        // counterclockwise around the outward normal
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            const Eigen::Vector3d da = vertices[a] - centroid;
            const Eigen::Vector3d db = vertices[b] - centroid;
            return std::atan2(da.dot(u2), da.dot(u1)) < std::atan2(db.dot(u2), db.dot(u1));
        });
        faces.push_back(canonical_rotation(members));
    }
    return faces;
}

}  // namespace detail

/// Midsphere-normalized Platonic solid: every edge tangent to the unit
/// sphere, tangency points at the edge midpoints, barycenter at the origin.
inline TangentPolytope platonic_solid(PlatonicKind kind) {
    const double phi = std::numbers::phi;
    std::vector<Eigen::Vector3d> vertices;
    std::vector<Eigen::Vector3d> normals;

    switch (kind) {
        case PlatonicKind::Tetrahedron: {
            vertices = {Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, -1, -1),
                        Eigen::Vector3d(-1, 1, -1), Eigen::Vector3d(-1, -1, 1)};
            for (const Eigen::Vector3d& v : vertices) normals.push_back(-v);
            break;
        }
        case PlatonicKind::Cube: {
            const double a = 1.0 / std::sqrt(2.0);
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1})
                        vertices.push_back(Eigen::Vector3d(sx * a, sy * a, sz * a));
            for (int axis = 0; axis < 3; ++axis)
                for (int s : {-1, 1}) normals.push_back(s * Eigen::Vector3d::Unit(axis));
            break;
        }
        case PlatonicKind::Octahedron: {
            const double b = std::sqrt(2.0);
            for (int axis = 0; axis < 3; ++axis)
                for (int s : {-1, 1}) vertices.push_back(s * b * Eigen::Vector3d::Unit(axis));
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1})
                        normals.push_back(Eigen::Vector3d(sx, sy, sz).normalized());
            break;
        }
        case PlatonicKind::Icosahedron: {
            // vertices (0, +-1, +-phi)/phi cyclically; midsphere radius of
            // the raw coordinates is phi
            for (int c = 0; c < 3; ++c)
                for (int s1 : {-1, 1})
                    for (int s2 : {-1, 1}) {
                        Eigen::Vector3d v = Eigen::Vector3d::Zero();
                        v((c + 1) % 3) = s1 * 1.0;
                        v((c + 2) % 3) = s2 * phi;
                        vertices.push_back(v / phi);
                    }
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1})
                        normals.push_back(Eigen::Vector3d(sx, sy, sz));
            // face centers sit over the dual dodecahedron's vertices, whose
            // cyclic pattern swaps phi and 1/phi relative to the vertex set
            for (int c = 0; c < 3; ++c)
                for (int s1 : {-1, 1})
                    for (int s2 : {-1, 1}) {
                        Eigen::Vector3d n = Eigen::Vector3d::Zero();
                        n((c + 1) % 3) = s1 * phi;
                        n((c + 2) % 3) = s2 / phi;
                        normals.push_back(n);
                    }
            break;
        }
        case PlatonicKind::Dodecahedron: {
            // cube vertices plus (0, +-1/phi, +-phi) cyclically, again with
            // raw midsphere radius phi
            for (int sx : {-1, 1})
                for (int sy : {-1, 1})
                    for (int sz : {-1, 1})
                        vertices.push_back(Eigen::Vector3d(sx, sy, sz) / phi);
            for (int c = 0; c < 3; ++c)
                for (int s1 : {-1, 1})
                    for (int s2 : {-1, 1}) {
                        Eigen::Vector3d v = Eigen::Vector3d::Zero();
                        v((c + 1) % 3) = s1 / phi;
                        v((c + 2) % 3) = s2 * phi;
                        vertices.push_back(v / phi);
                    }
            // dual icosahedron vertex directions, again with the swapped
            // cyclic pattern
            for (int c = 0; c < 3; ++c)
                for (int s1 : {-1, 1})
                    for (int s2 : {-1, 1}) {
                        Eigen::Vector3d n = Eigen::Vector3d::Zero();
                        n((c + 1) % 3) = s1 * phi;
                        n((c + 2) % 3) = s2 * 1.0;
                        normals.push_back(n);
                    }
            break;
        }
    }

    std::vector<std::vector<int>> faces = detail::faces_from_normals(vertices, normals);
    return build_polytope(std::move(vertices), std::move(faces));
}

inline TangentPolytope generate_test_polytope(PlatonicKind kind) { return platonic_solid(kind); }

inline TangentPolytope generate_test_polytope(PlatonicKind kind, const LorentzMatrix& transform) {
    return apply_projective(transform, platonic_solid(kind));
}

/// Seeded random perturbation by a sphere-fixing projective map of rapidity
/// at most max_rapidity.  Draws are rejected until all vertices stay well
/// clear of the plane at infinity (time component >= 0.2), so the result is
/// always a valid edge-tangent polytope.
inline TangentPolytope generate_test_polytope(PlatonicKind kind, std::uint64_t seed,
                                              double max_rapidity = 2.0) {
    const TangentPolytope base = platonic_solid(kind);
    Rng rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const LorentzMatrix m = random_sphere_fixing_transform(rng, 2, max_rapidity);
        double min_time = 1e300;
        for (const Eigen::Vector3d& p : base.vertices) {
            Eigen::Vector4d h;
            h(0) = 1.0;
            h.tail(3) = p;
            min_time = std::min(min_time, (m.entries() * h)(0));
        }
        if (min_time >= 0.2) return apply_projective(m, base);
    }
    throw NumericalFailure("generate_test_polytope: no admissible perturbation found");
}

}  // namespace moebius
