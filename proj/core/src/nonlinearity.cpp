#include "fracnodal/nonlinearity.hpp"

#include "fracnodal/errors.hpp"
#include "fracnodal/grid.hpp"

#include <cmath>
#include <numbers>

namespace fracnodal {

namespace {

// ∫ τ log(1+τ) dτ
double log_antiderivative(double t) {
    return 0.5 * (t * t - 1.0) * std::log1p(t) - 0.25 * t * t + 0.5 * t;
}

}  // namespace

void validate(const NonlinearityParams& params, int dimension, double alpha) {
    const double critical = critical_exponent(dimension, alpha);
    if (!(params.m > 2.0 && params.m < critical)) {
        throw ParameterError("exponent m must lie in (2, 2*_alpha) = (2, " + std::to_string(critical) +
                             "), got " + std::to_string(params.m));
    }
}

double f_eval(const NonlinearityParams& params, double t) {
    switch (params.model) {
        case NonlinearityModel::positive_power:
            return t > 0.0 ? std::pow(t, params.m) : 0.0;
        case NonlinearityModel::log_model:
            if (t <= 0.0) return 0.0;
            if (t <= 1.0) return std::numbers::ln2 * std::pow(t, params.m);
            return t * std::log1p(t);
        case NonlinearityModel::odd_power:
            return std::pow(std::abs(t), params.m - 2.0) * t;
    }
    return 0.0;
}

double F_eval(const NonlinearityParams& params, double t) {
    switch (params.model) {
        case NonlinearityModel::positive_power:
            return t > 0.0 ? std::pow(t, params.m + 1.0) / (params.m + 1.0) : 0.0;
        case NonlinearityModel::log_model: {
            if (t <= 0.0) return 0.0;
            const double at_one = std::numbers::ln2 / (params.m + 1.0);
            if (t <= 1.0) return at_one * std::pow(t, params.m + 1.0);
            return at_one + log_antiderivative(t) - log_antiderivative(1.0);
        }
        case NonlinearityModel::odd_power:
            return std::pow(std::abs(t), params.m) / params.m;
    }
    return 0.0;
}

std::optional<double> homogeneity_degree(const NonlinearityParams& params) {
    switch (params.model) {
        case NonlinearityModel::positive_power: return params.m + 1.0;
        case NonlinearityModel::odd_power: return params.m;
        case NonlinearityModel::log_model: return std::nullopt;
    }
    return std::nullopt;
}

std::string_view to_string(NonlinearityModel model) {
    switch (model) {
        case NonlinearityModel::positive_power: return "positive_power";
        case NonlinearityModel::log_model: return "log_model";
        case NonlinearityModel::odd_power: return "odd_power";
    }
    return "unknown";
}

NonlinearityModel parse_model(std::string_view name) {
    if (name == "positive_power") return NonlinearityModel::positive_power;
    if (name == "log_model") return NonlinearityModel::log_model;
    if (name == "odd_power") return NonlinearityModel::odd_power;
    throw ParameterError("unknown nonlinearity model '" + std::string(name) + "'");
}

}  // namespace fracnodal
