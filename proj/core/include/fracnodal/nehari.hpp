#pragma once

#include "fracnodal/functional.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracnodal {

/// J restricted to the ray t ↦ t u. Evaluations are O(n) after an O(n²) setup.
namespace detail {

/// Σ w_i F(λ v_i) and Σ w_i f(λ v_i) v_i along a fixed direction v for λ ≥ 0.
/// Constant cost per evaluation when F is homogeneous.
class RayTerms {
public:
    RayTerms(const EnergyFunctional& functional, State direction);

    [[nodiscard]] double primitive(double scale) const;
    [[nodiscard]] double pairing(double scale) const;
    [[nodiscard]] const State& direction() const noexcept { return v_; }

private:
    const EnergyFunctional* functional_;
    State v_;
    std::optional<double> degree_;
    double primitive_at_one_ = 0.0;
    double pairing_at_one_ = 0.0;
};

}  // namespace detail

class RaySlice {
public:
    RaySlice(const EnergyFunctional& functional, const State& u);

    /// h_u(t) = J(t u)
    [[nodiscard]] double value(double t) const;
    /// h_u′(t) = ⟨J′(t u), u⟩
    [[nodiscard]] double derivative(double t) const;
    [[nodiscard]] double norm_sq() const noexcept { return norm_sq_; }

private:
    detail::RayTerms terms_;
    double norm_sq_;
};

/// J restricted to the quarter plane (t, s) ↦ t u⁺ + s u⁻.
///
/// With a = ‖u⁺‖², b = ‖u⁻‖², c = ⟨u⁺, u⁻⟩ (= −B ≥ 0 on this discretization when the
/// off-diagonal kernel weights are nonpositive) the quadratic part is ½(a t² + 2 c t s + b s²),
/// and the nonlinear part separates because u⁺ and u⁻ have disjoint nodal support.
class NodalSlice {
public:
    NodalSlice(const EnergyFunctional& functional, const State& u);

    /// h^u(t, s) = J(t u⁺ + s u⁻)
    [[nodiscard]] double value(double t, double s) const;
    /// Φ^u(t, s) = (⟨J′(t u⁺ + s u⁻), u⁺⟩, ⟨J′(t u⁺ + s u⁻), u⁻⟩)
    [[nodiscard]] std::array<double, 2> gradient(double t, double s) const;

    [[nodiscard]] const State& plus() const noexcept { return plus_.direction(); }
    [[nodiscard]] const State& minus() const noexcept { return minus_.direction(); }
    [[nodiscard]] double plus_norm_sq() const noexcept { return a_; }
    [[nodiscard]] double minus_norm_sq() const noexcept { return b_; }
    [[nodiscard]] double coupling() const noexcept { return c_; }

private:
    NodalSlice(const EnergyFunctional& functional, std::pair<State, State> parts);

    detail::RayTerms plus_;
    detail::RayTerms minus_;
    double a_;
    double b_;
    double c_;
};

double h_scalar(const EnergyFunctional& functional, const State& u, double t);
double h_scalar_deriv(const EnergyFunctional& functional, const State& u, double t);

/// Unique t_u > 0 with ⟨J′(t_u u), u⟩ = 0, by bracket expansion (factor 2, at most 1000 steps)
/// followed by TOMS 748 until the bracket is narrower than rel_width · t.
/// Throws DivergenceError if no sign change is found.
double scalar_projection(const EnergyFunctional& functional, const State& u, double rel_width = 1e-12);

/// Range of t_u over the given directions rescaled to unit norm. A positive minimum is observed
/// per sample only; no uniform lower bound is implied.
struct ProjectionScaleRange {
    double min = 0.0;
    double max = 0.0;
    int samples = 0;
};
ProjectionScaleRange sample_projection_scales(const EnergyFunctional& functional, std::span<const State> directions);

double h_nodal(const EnergyFunctional& functional, const State& u, double t, double s);
std::array<double, 2> phi_grad(const EnergyFunctional& functional, const State& u, double t, double s);

/// φ₁(s): the positive root of t ↦ Φ₁^u(t, s). Same bracketing rule as scalar_projection.
double phi1(const NodalSlice& slice, double s, double rel_width = 1e-12);
/// φ₂(t): the positive root of s ↦ Φ₂^u(t, s).
double phi2(const NodalSlice& slice, double t, double rel_width = 1e-12);
double phi1(const EnergyFunctional& functional, const State& u, double s, double rel_width = 1e-12);
double phi2(const EnergyFunctional& functional, const State& u, double t, double rel_width = 1e-12);

struct ProjectionOptions {
    /// Stop when max|Φ^u| ≤ tol · (1 + ‖u‖²).
    double tol = 1e-10;
    int max_iter = 500;
    /// Side of the coarse grid used to confirm the returned point is the global maximum.
    int validation_grid = 24;
};

struct NodalScales {
    double t_plus = 0.0;
    double s_minus = 0.0;
    /// max |Φ^u(t₊, s₋)|
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    /// "fixed_point", "coordinate_ascent" or a failure note.
    std::string method;
};

/// Unique maximiser (t₊, s₋) of h^u. Iterates T(t, s) = (φ₁(s), φ₂(t)) from (1, 1) and falls back
/// to alternating maximisation if T stagnates. Non-convergence is reported through `converged`.
/// Throws ParameterError if u is one-signed.
NodalScales nodal_projection(const EnergyFunctional& functional, const State& u, const ProjectionOptions& options = {});
NodalScales nodal_projection(const NodalSlice& slice, const ProjectionOptions& options = {});

struct SignProfileRow {
    double r;
    double a_plus;   ///< Φ₁^u(r, s₋) r
    double a_minus;  ///< Φ₂^u(t₊, r) r
};

struct SignProfile {
    std::vector<SignProfileRow> rows;
    /// a₊ > 0 below t₊ and < 0 above, same for a₋ about s₋ (rows within 1e-9 relative of the
    /// critical scale are not judged).
    bool pattern_ok = true;
};

SignProfile sign_profile(const EnergyFunctional& functional, const State& u, const NodalScales& scales,
                         const std::vector<double>& radii);

struct MembershipReport {
    bool in_nehari = false;
    double nehari_residual = 0.0;
    bool in_nodal_set = false;
    double plus_residual = 0.0;
    double minus_residual = 0.0;
    double plus_norm = 0.0;
    double minus_norm = 0.0;
};

/// Residuals are judged against tol · (1 + ‖u‖²); nodal membership also needs ‖u^±‖ ≥ beta.
MembershipReport membership(const EnergyFunctional& functional, const State& u, double beta = 1e-6,
                            double tol = 1e-8);

}  // namespace fracnodal
