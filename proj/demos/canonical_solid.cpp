// Perturbs a dodecahedron by a random sphere-fixing projective map and
// recovers the canonical representative.

#include <iostream>

#include "moebius/moebius.hpp"

int main() {
    using namespace moebius;

    TangentPolytope perturbed = generate_test_polytope(PlatonicKind::Dodecahedron, 2024, 1.0);
    auto [canonical, report] = canonicalize(perturbed);

    std::cout << "tangency barycenter: " << report.barycenter_norm_before << " -> "
              << report.barycenter_norm_after << "\n"
              << "max tangency violation: " << report.max_tangency_violation << "\n"
              << "vertex norms (canonical):";
    for (const auto& v : canonical.vertices) std::cout << ' ' << v.norm();
    std::cout << "\n";

    write_off(std::cout, canonical.vertices, canonical.faces);
    return 0;
}
