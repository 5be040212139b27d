#include "fracnodal/grid.hpp"

#include "fracnodal/errors.hpp"

#include <cmath>
#include <string>

namespace fracnodal {

Eigen::VectorXd Grid::nodal_mass() const {
    Eigen::VectorXd mass = Eigen::VectorXd::Constant(size(), spacing);
    mass[0] = 0.5 * spacing;
    mass[size() - 1] = 0.5 * spacing;
    return mass;
}

Grid build_grid(double radius, int n) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ParameterError("grid radius must be positive and finite, got " + std::to_string(radius));
    }
    if (n < 3 || n % 2 == 0) {
        throw ParameterError("grid node count must be odd and >= 3, got " + std::to_string(n));
    }
    Grid grid;
    grid.radius = radius;
    grid.spacing = 2.0 * radius / (n - 1);
    grid.nodes.resize(n);
    const int half = (n - 1) / 2;
    // Build from the centre so the grid is exactly symmetric and x = 0 is exact.
    for (int k = 0; k <= half; ++k) {
        const double x = (k == half) ? radius : k * grid.spacing;
        grid.nodes[half + k] = x;
        grid.nodes[half - k] = -x;
    }
    return grid;
}

void check_fractional_order(int dimension, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("fractional order alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (dimension < 1) {
        throw ParameterError("dimension N must be positive");
    }
    if (!(dimension > 2.0 * alpha)) {
        throw UnsupportedRegime("N>2α violated: N=" + std::to_string(dimension) +
                                ", alpha=" + std::to_string(alpha));
    }
}

double critical_exponent(int dimension, double alpha) {
    check_fractional_order(dimension, alpha);
    return 2.0 * dimension / (dimension - 2.0 * alpha);
}

}  // namespace fracnodal
