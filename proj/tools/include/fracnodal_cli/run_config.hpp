#pragma once

#include <fracnodal/coefficients.hpp>
#include <fracnodal/degree.hpp>
#include <fracnodal/hypotheses.hpp>
#include <fracnodal/nonlinearity.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

namespace fracnodal::cli {

/// Invalid configuration; `key` names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct RunConfig {
    double alpha = 0.4;
    int dimension = 1;
    double radius = 20.0;
    int n = 801;

    NonlinearityModel model = NonlinearityModel::odd_power;
    double m = 4.0;

    PotentialPreset preset = PotentialPreset::constant;
    double constant_value = 1.0;
    bool h4_variant = false;
    double pair_m = 3.0;
    std::string coefficients_file;

    double projection_tol = 1e-12;
    double solver_tol = 1e-6;
    double beta_config = 1e-6;
    int max_iter = 20000;

    // Seeds: Gaussian lobes of the given width; nodal seeds put them at ±separation/2.
    double seed_width = 0.5;
    double seed_amplitude = 1.0;
    double seed_separation = 2.0;
    int multistart_random = 0;
    std::uint64_t rng_seed = 1;

    GrowthMode hypothesis_mode = GrowthMode::h3;
    double h2_window = 2.0;

    Rectangle degree_rect;
    int degree_samples = 256;

    std::filesystem::path output_dir = ".";

    /// Range and consistency checks; throws ConfigError naming the key.
    void validate() const;
};

}  // namespace fracnodal::cli
