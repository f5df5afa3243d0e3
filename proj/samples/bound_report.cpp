// Prints ω and the minimized weighted-power bound for a matrix file.
//   bound_report samples/example1.json

#include <cstdio>
#include <fstream>
#include <sstream>

#include "numrad/numrad.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <matrix.json|matrix.csv>\n", argv[0]);
        return 2;
    }
    std::ifstream in(argv[1]);
    std::stringstream text;
    text << in.rdbuf();

    const numrad::ComplexMatrix a = numrad::parse_matrix(text.str());
    numrad::BoundCatalog catalog(a);
    const auto omega = catalog.omega();
    const auto wp = catalog.evaluate(numrad::BoundId::WeightedPower);
    std::printf("omega          = %.10f (theta* = %.6f)\n", omega.value, omega.theta_star);
    std::printf("weighted-power = %.10f at t = %.6f (inner %.6f)\n", wp.value, *wp.t_used, *wp.inner);
    std::printf("kitt-sum       = %.10f\n", catalog.kittaneh_sum().value);
    return 0;
}
