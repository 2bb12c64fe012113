#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input violates a documented precondition or type invariant
/// (non-unit sphere point, duplicate points, n < 3, broken mesh, ...).
class DegenerateInput : public Error {
  public:
    explicit DegenerateInput(const std::string& what) : Error(what) {}
};

/// A quantity left the range where double precision keeps the model
/// invariants (rapidity beyond the cap, iterate escaping to the boundary).
class IllConditioned : public Error {
  public:
    explicit IllConditioned(const std::string& what) : Error(what) {}
};

/// An internal invariant failed at run time; indicates corrupted input or
/// a bug, never a merely difficult instance.
class NumericalFailure : public Error {
  public:
    explicit NumericalFailure(const std::string& what) : Error(what) {}
};

/// Iteration budget exhausted before the gradient tolerance was met.
class NoConvergence : public Error {
  public:
    NoConvergence(int iterations, double last_grad_norm, const std::string& what)
        : Error(what), iterations(iterations), last_grad_norm(last_grad_norm) {}

    int iterations;
    double last_grad_norm;
};

/// An edge line is not tangent to the unit sphere.
class NotTangent : public Error {
  public:
    NotTangent(double distance, const std::string& what) : Error(what), distance(distance) {}

    /// |distance of the line from the origin - 1|.
    double distance;
};

/// The perpendicular foot of an edge line lies outside the edge segment.
class TangencyOutsideEdge : public Error {
  public:
    TangencyOutsideEdge(double parameter, const std::string& what)
        : Error(what), parameter(parameter) {}

    /// Line parameter of the foot; tangency requires it in (0,1).
    double parameter;
};

/// A projective transform sent a vertex to (or past) the plane at infinity.
class HitsInfinity : public Error {
  public:
    HitsInfinity(int vertex_index, const std::string& what)
        : Error(what), vertex_index(vertex_index) {}

    int vertex_index;
};

/// Malformed input file (OFF or JSON point set).
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace moebius
