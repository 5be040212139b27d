#pragma once

#include <Eigen/Core>

namespace fracnodal {

/// Uniform grid on the truncated domain [-R, R] (one space dimension).
struct Grid {
    Eigen::VectorXd nodes;
    double spacing = 0.0;
    double radius = 0.0;
    int dimension = 1;

    [[nodiscard]] Eigen::Index size() const noexcept { return nodes.size(); }
    [[nodiscard]] double operator[](Eigen::Index i) const { return nodes[i]; }

    /// Trapezoidal nodal mass (integral of the hat function): h inside, h/2 at the ends.
    [[nodiscard]] Eigen::VectorXd nodal_mass() const;
};

/// Uniform grid with n nodes on [-radius, radius]; n must be odd and >= 3 so that x = 0 is a node.
Grid build_grid(double radius, int n);

/// Throws ParameterError unless 0 < alpha < 1, and UnsupportedRegime unless N > 2 alpha.
void check_fractional_order(int dimension, double alpha);

/// Critical Sobolev exponent 2N / (N - 2 alpha).
double critical_exponent(int dimension, double alpha);

}  // namespace fracnodal
