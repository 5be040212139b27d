#include "fracnodal_cli/run_config.hpp"

#include <fracnodal/errors.hpp>
#include <fracnodal/grid.hpp>

#include <cmath>
#include <sstream>

namespace fracnodal::cli {

namespace {

std::string str(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

void positive(const char* key, double value) {
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError(key, "must be positive, got " + str(value));
}

}  // namespace

void RunConfig::validate() const {
    if (dimension != 1) throw ConfigError("N", "only N = 1 is supported, got " + std::to_string(dimension));
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha", "must lie in (0, 1), got " + str(alpha));
    try {
        check_fractional_order(dimension, alpha);
    } catch (const UnsupportedRegime& e) {
        throw ConfigError("alpha", e.what());
    }
    positive("R", radius);
    if (n < 3 || n % 2 == 0) throw ConfigError("n", "must be odd and at least 3, got " + std::to_string(n));
    const double crit = critical_exponent(dimension, alpha);
    if (!(m > 2.0 && m < crit)) {
        throw ConfigError("m", "must lie in (2, 2*_alpha) = (2, " + str(crit) + "), got " + str(m));
    }
    if (h4_variant && !(pair_m > 2.0 && pair_m < crit)) {
        throw ConfigError("pair_m", "must lie in (2, " + str(crit) + "), got " + str(pair_m));
    }
    if (preset == PotentialPreset::constant) positive("constant_value", constant_value);
    if (preset == PotentialPreset::from_file) {
        if (coefficients_file.empty()) throw ConfigError("coefficients_file", "required when potential = from_file");
        if (!std::filesystem::exists(coefficients_file)) {
            throw ConfigError("coefficients_file", "file not found: " + coefficients_file);
        }
    }
    positive("projection_tol", projection_tol);
    positive("solver_tol", solver_tol);
    positive("beta_config", beta_config);
    if (max_iter < 1) throw ConfigError("max_iter", "must be at least 1");
    positive("seed_width", seed_width);
    if (seed_amplitude == 0.0 || !std::isfinite(seed_amplitude)) throw ConfigError("seed_amplitude", "must be nonzero");
    if (!(seed_separation > 0.0 && seed_separation / 2.0 < radius)) {
        throw ConfigError("seed_separation", "lobes at ±" + str(seed_separation / 2.0) + " must lie inside (-R, R)");
    }
    if (multistart_random < 0) throw ConfigError("multistart_random", "must be nonnegative");
    positive("h2_window", h2_window);
    if (!(h2_window < radius)) throw ConfigError("h2_window", "must be smaller than R = " + str(radius));
    try {
        degree_rect.validate();
    } catch (const ParameterError& e) {
        throw ConfigError("degree_rect", e.what());
    }
    if (degree_samples < 64) throw ConfigError("degree_samples", "must be at least 64");
}

}  // namespace fracnodal::cli
