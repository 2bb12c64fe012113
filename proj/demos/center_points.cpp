// Centers a small point set on S^2 and prints the certificate.

#include <iostream>

#include "moebius/moebius.hpp"

int main() {
    using namespace moebius;

    Rng rng(42);
    std::vector<SpherePoint> points;
    for (int i = 0; i < 12; ++i) points.push_back(random_sphere_point(rng, 2));

    PointConfiguration cfg(2, points);
    CenteringResult result = center(cfg);

    std::cout << "minimizer rapidity:  " << result.minimizer.rapidity() << "\n"
              << "iterations:          " << result.iterations << "\n"
              << "residual |sum Tv_j|: " << result.residual << "\n\n"
              << "boost matrix:\n" << result.transform.entries() << "\n";
    return 0;
}
