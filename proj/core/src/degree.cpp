#include "fracnodal/degree.hpp"

#include "fracnodal/errors.hpp"
#include "fracnodal/nehari.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace fracnodal {

namespace {

// Boundary point k of `total`, walking bottom → right → top → left.
std::array<double, 2> boundary_point(const Rectangle& r, int k, int total) {
    const int per_side = total / 4;
    const int side = k / per_side;
    const double f = static_cast<double>(k % per_side) / per_side;
    switch (side) {
        case 0: return {r.t_lo + f * (r.t_hi - r.t_lo), r.s_lo};
        case 1: return {r.t_hi, r.s_lo + f * (r.s_hi - r.s_lo)};
        case 2: return {r.t_hi - f * (r.t_hi - r.t_lo), r.s_hi};
        default: return {r.t_lo, r.s_hi - f * (r.s_hi - r.s_lo)};
    }
}

// Total angle swept, or nullopt when some step exceeds π/2.
std::optional<double> swept_angle(const std::vector<std::array<double, 2>>& values) {
    double total = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const auto& a = values[k];
        const auto& b = values[(k + 1) % values.size()];
        const double step = std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
        if (std::abs(step) > 0.5 * std::numbers::pi) return std::nullopt;
        total += step;
    }
    return total;
}

}  // namespace

void Rectangle::validate() const {
    if (!(t_lo > 0.0 && t_lo < t_hi && s_lo > 0.0 && s_lo < s_hi)) {
        throw ParameterError("rectangle needs 0 < t_lo < t_hi and 0 < s_lo < s_hi");
    }
}

int winding_number(const PlanarMap& map, const Rectangle& rect, const WindingOptions& options) {
    rect.validate();
    if (options.n_boundary < 64) {
        throw ParameterError("winding number needs at least 64 boundary samples");
    }
    int total = (options.n_boundary + 3) / 4 * 4;
    for (;;) {
        std::vector<std::array<double, 2>> values(total);
        for (int k = 0; k < total; ++k) {
            const auto [t, s] = boundary_point(rect, k, total);
            values[k] = map(t, s);
            if (std::hypot(values[k][0], values[k][1]) <= options.zero_threshold) {
                throw DegenerateBoundary("map vanishes on the boundary near (" + std::to_string(t) + ", " +
                                         std::to_string(s) + ")");
            }
        }
        if (const auto angle = swept_angle(values)) {
            return static_cast<int>(std::lround(*angle / (2.0 * std::numbers::pi)));
        }
        if (total * 2 > options.max_boundary) {
            throw ResolutionError("angular steps above pi/2 persist with " + std::to_string(total) +
                                  " boundary samples");
        }
        total *= 2;
    }
}

int certify_minimizer(const EnergyFunctional& functional, const State& u, const Rectangle& rect,
                      const WindingOptions& options) {
    const NodalSlice slice(functional, u);
    return winding_number([&](double t, double s) { return slice.gradient(t, s); }, rect, options);
}

}  // namespace fracnodal
