#pragma once

#include "fracnodal/grid.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <string_view>

namespace fracnodal {

/// Nodal samples of the potential V and the weight K.
struct CoefficientPair {
    Eigen::VectorXd v;
    Eigen::VectorXd k;
};

enum class PotentialPreset {
    constant,             ///< V = K = c
    log_tail,             ///< 1 / log(2 + |x|)
    log_tail_with_bumps,  ///< H₃ + 1 / log(2 + |x|)
    from_file,            ///< CSV with columns x,V,K
};

std::string_view to_string(PotentialPreset preset);
PotentialPreset parse_preset(std::string_view name);

struct CoefficientOptions {
    PotentialPreset preset = PotentialPreset::constant;
    double constant_value = 1.0;
    /// If true, V uses the tail (1/log(2+|x|))^{(2*−2)/(2*−pair_m)} while K keeps the plain tail.
    bool h4_variant = false;
    double pair_m = 3.0;
    double alpha = 0.4;
    std::string file;
};

/// 1 / log(2 + |x|)
double log_tail(double x);

/// Pointwise bump family: tents at x = n (n = 1, 2, ...) of height 1 and half-width 2^{-n},
/// so the n-th bump carries mass 2^{-n}.
double bump_profile(double x);

/// Hat-weighted averages ∫H₃φ_i / ∫φ_i of the bump family. Bumps narrower than the grid spacing
/// keep their exact mass instead of being lost or inflated by point sampling.
Eigen::VectorXd bump_family_averages(const Grid& grid);

CoefficientPair make_coefficients(const Grid& grid, const CoefficientOptions& options);

/// Reads `x,V,K` rows (header required) and interpolates linearly onto the grid nodes.
/// Throws ParameterError if the file does not cover [-R, R].
CoefficientPair read_coefficients_csv(std::istream& in, const Grid& grid);

}  // namespace fracnodal
