#pragma once

#include "fracnodal/functional.hpp"

#include <array>
#include <functional>

namespace fracnodal {

/// Axis-aligned rectangle [t_lo, t_hi] × [s_lo, s_hi] in the positive quadrant.
struct Rectangle {
    double t_lo = 0.5;
    double t_hi = 1.5;
    double s_lo = 0.5;
    double s_hi = 1.5;

    /// Throws ParameterError unless 0 < lo < hi on both axes.
    void validate() const;
};

using PlanarMap = std::function<std::array<double, 2>(double, double)>;

struct WindingOptions {
    int n_boundary = 256;
    /// Sampling is doubled while some angular step exceeds π/2, up to this many points.
    int max_boundary = 1 << 18;
    double zero_threshold = 1e-10;
};

/// Brouwer degree of `map` on `rect` with respect to (0, 0), as the winding number of the map along
/// the counter-clockwise boundary. Throws DegenerateBoundary if the map (numerically) vanishes at a
/// boundary sample and ResolutionError if the step guard still fails at max_boundary samples.
int winding_number(const PlanarMap& map, const Rectangle& rect, const WindingOptions& options = {});

/// Degree of Φ^u on `rect`; 1 is expected on [1/2, 3/2]² for a converged nodal state.
int certify_minimizer(const EnergyFunctional& functional, const State& u, const Rectangle& rect = {},
                      const WindingOptions& options = {});

}  // namespace fracnodal
