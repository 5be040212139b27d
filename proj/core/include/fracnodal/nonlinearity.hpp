#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace fracnodal {

enum class NonlinearityModel {
    positive_power,  ///< f(t) = (t⁺)^m
    log_model,       ///< f(t) = log 2 (t⁺)^m for t ≤ 1, t log(1+t) for t > 1
    odd_power,       ///< f(t) = |t|^{m-2} t
};

struct NonlinearityParams {
    NonlinearityModel model = NonlinearityModel::odd_power;
    double m = 4.0;

    [[nodiscard]] bool is_odd() const noexcept { return model == NonlinearityModel::odd_power; }
};

/// Throws ParameterError unless 2 < m < 2*_α for the given (N, α).
void validate(const NonlinearityParams& params, int dimension, double alpha);

double f_eval(const NonlinearityParams& params, double t);
/// F(t) = ∫₀ᵗ f.
double F_eval(const NonlinearityParams& params, double t);

/// d with F(λt) = λ^d F(t) for all λ > 0, t ∈ ℝ; empty for models without this scaling.
std::optional<double> homogeneity_degree(const NonlinearityParams& params);

std::string_view to_string(NonlinearityModel model);
/// Accepts the names printed by to_string; throws ParameterError otherwise.
NonlinearityModel parse_model(std::string_view name);

}  // namespace fracnodal
