#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "moebius/centering.hpp"
#include "moebius/errors.hpp"
#include "moebius/models.hpp"

namespace moebius {

/// Raw point-set file content: {"dim": d, "points": [[...], ...]}.
/// Rows are unvalidated doubles; see to_configuration.
struct PointSetFile {
    int dim = 0;
    std::vector<Eigen::VectorXd> points;
};

inline PointSetFile read_point_set(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("point set: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw ParseError("point set: expected an object with 'dim' and 'points'");
    PointSetFile ps;
    if (!j["dim"].is_number_integer())
        throw ParseError("point set: 'dim' must be an integer");
    ps.dim = j["dim"].get<int>();
    if (ps.dim < 1) throw ParseError("point set: 'dim' must be >= 1");
    if (!j["points"].is_array()) throw ParseError("point set: 'points' must be an array");
    for (const auto& row : j["points"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != ps.dim + 1)
            throw ParseError("point set: every row must have dim+1 = " +
                             std::to_string(ps.dim + 1) + " entries");
        Eigen::VectorXd v(ps.dim + 1);
        for (int i = 0; i <= ps.dim; ++i) {
            if (!row[i].is_number()) throw ParseError("point set: non-numeric coordinate");
            v(i) = row[i].get<double>();
        }
        ps.points.push_back(std::move(v));
    }
    return ps;
}

inline PointSetFile read_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "' for reading");
    return read_point_set(in);
}

/// Validates rows against the sphere and builds the solver input.  Rows
/// must be unit within unit_tol; with renormalize they are snapped to the
/// sphere instead of rejected.  Rows inside unit_tol are always snapped:
/// the solver needs exactly unit vectors.
inline PointConfiguration to_configuration(const PointSetFile& ps, bool renormalize = false,
                                           double unit_tol = 1e-9,
                                           double separation_tol = 1e-9) {
    std::vector<SpherePoint> points;
    points.reserve(ps.points.size());
    for (std::size_t i = 0; i < ps.points.size(); ++i) {
        const double norm = ps.points[i].norm();
        if (!(norm > 0.0))
            throw DegenerateInput("point " + std::to_string(i) + " is the zero vector");
        if (!renormalize && std::abs(norm - 1.0) > unit_tol)
            throw DegenerateInput("point " + std::to_string(i) + " is not unit (|norm-1| = " +
                                  std::to_string(std::abs(norm - 1.0)) +
                                  "); rerun with renormalization to accept it");
        points.emplace_back(ps.points[i] / norm);
    }
    return PointConfiguration(ps.dim, std::move(points), separation_tol);
}

inline nlohmann::json point_set_json(int dim, const std::vector<SpherePoint>& points) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SpherePoint& p : points) {
        nlohmann::json row = nlohmann::json::array();
        for (int i = 0; i < p.coords().size(); ++i) row.push_back(p.coords()(i));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"dim", dim}, {"points", std::move(rows)}};
}

inline void write_point_set(std::ostream& out, int dim, const std::vector<SpherePoint>& points) {
    out << point_set_json(dim, points).dump(2) << '\n';
}

inline void write_point_set_file(const std::string& path, int dim,
                                 const std::vector<SpherePoint>& points) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    write_point_set(out, dim, points);
}

}  // namespace moebius
