#pragma once

#include "fracnodal/grid.hpp"
#include "fracnodal/nonlinearity.hpp"

#include <Eigen/Core>

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracnodal {

enum class Verdict { pass, flagged, not_checkable };

std::string_view to_string(Verdict verdict);

struct Witness {
    double location;
    double value;
    std::string note;
};

/// Outcome for one condition. Conditions about limits are judged from sampled trends
/// (`trend == true`); such verdicts are evidence, not proofs.
struct ConditionResult {
    std::string condition;
    Verdict verdict = Verdict::not_checkable;
    bool trend = false;
    std::string detail;
    std::vector<Witness> witnesses;
};

struct HypothesisReport {
    std::vector<ConditionResult> conditions;
    /// Which of (h3)/(h4) the configuration relies on.
    std::string claimed;
    /// Which of (h3)/(h4) passed on the samples ("h3", "h4", "h3+h4" or "none").
    std::string observed;

    [[nodiscard]] const ConditionResult* find(std::string_view condition) const;
};

/// Max and median of a field over geometric shells r_lo ≤ |x| < r_hi covering [R/100, R].
struct RadialBin {
    double r_lo;
    double r_hi;
    double max;
    double median;
    double argmax;
};
std::vector<RadialBin> radial_bins(const Grid& grid, const Eigen::VectorXd& values, int bins = 8);

/// (h1): V, K > 0 at every sample and no growth trend of K across the outer shells.
ConditionResult check_h1(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k);

/// (h2) approximated by intervals: for each radius r, the largest ∫ K over an interval of length
/// window_measure inside r ≤ |x| ≤ R. Passes when these sums vanish or strictly decrease with r.
/// Throws ParameterError if r + window_measure > R for some radius or the radii are not increasing.
ConditionResult check_h2(const Grid& grid, const Eigen::VectorXd& k, double window_measure,
                         const std::vector<double>& radii);

/// Radii 0, R/8, ..., up to R − window_measure, used when none are given.
std::vector<double> default_h2_radii(const Grid& grid, double window_measure);

/// (h3): K/V shows no growth trend.
ConditionResult check_h3(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k);

/// (h4): K / V^{(2*−m)/(2*−2)} decays across the outer shells (maxima non-increasing, medians
/// strictly decreasing). Throws ParameterError if m ∉ (2, 2*_α).
ConditionResult check_h4(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k, double m,
                         double alpha, int dimension = 1);

/// A nonlinearity given by samples of f and its primitive F.
struct SampledNonlinearity {
    std::function<double(double)> f;
    std::function<double(double)> F;
};
SampledNonlinearity sampled(const NonlinearityParams& params);

enum class GrowthMode { h3, h4 };

/// Symmetric log-spaced grid ±10^{k/per_decade} in [t_min, t_max], ascending, without 0.
std::vector<double> log_spaced_grid(double t_min, double t_max, int per_decade = 20);

/// (f1) or (f̃1) depending on mode, then (f2), (f3), (f4) and the monotonicity of ½ f(t) t − F(t).
/// A sign half on which f vanishes identically (the one-sided models on t < 0) is reported as
/// degenerate and not judged for strict monotonicity.
std::vector<ConditionResult> check_f(const SampledNonlinearity& nonlinearity, GrowthMode mode, double m, double alpha,
                                     int dimension, std::span<const double> t_grid);

struct ValidationOptions {
    GrowthMode mode = GrowthMode::h3;
    double window_measure = 2.0;
    std::vector<double> radii;  // empty: default_h2_radii
    double h4_m = 0.0;          // 0: use the nonlinearity exponent
    std::vector<double> t_grid; // empty: log_spaced_grid(1e-4, 1e4)
};

/// All of the above on one configuration.
HypothesisReport validate_hypotheses(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k,
                                     const NonlinearityParams& params, double alpha, const ValidationOptions& options);

}  // namespace fracnodal
