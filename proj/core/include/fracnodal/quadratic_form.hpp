#pragma once

#include "fracnodal/grid.hpp"

#include <Eigen/Core>

#include <iosfwd>

namespace fracnodal {

/// Discrete energy norm on P1 functions over [-R, R], extended by zero outside.
///
///   ‖u‖² = uᵀ A u + Σ w_i u_i² + Σ p_i u_i²
///
/// A is the Ω×Ω part of the Gagliardo double integral with the raw kernel |x-y|^{-1-2α},
/// w carries the tail 2∫_Ω u(x)² ∫_{Ω^c} |x-y|^{-1-2α} dy dx (lumped per node) and p is the
/// lumped potential mass V_i · m_i.
struct QuadraticForm {
    Grid grid;
    double alpha = 0.0;
    Eigen::MatrixXd interior;
    Eigen::VectorXd exterior_weights;
    Eigen::VectorXd potential_mass;

    [[nodiscard]] Eigen::Index size() const noexcept { return interior.rows(); }

    /// [u]² = uᵀAu + Σ w_i u_i².
    [[nodiscard]] double seminorm_sq(const Eigen::VectorXd& u) const;
    /// ‖u‖² = [u]² + Σ p_i u_i².
    [[nodiscard]] double norm_sq(const Eigen::VectorXd& u) const;
    /// Bilinear form ⟨u, v⟩ whose diagonal is norm_sq.
    [[nodiscard]] double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
    /// S u with S = A + diag(w + p), the matrix of ⟨·,·⟩.
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
    /// Dense copy of S.
    [[nodiscard]] Eigen::MatrixXd norm_operator() const;

    /// ∫∫ φ_i(x) φ_j(y) |x-y|^{-1-2α} as realised by the assembled matrix, i.e. -A_ij / 2 for i ≠ j.
    [[nodiscard]] double kernel_weight(Eigen::Index i, Eigen::Index j) const;

    /// True when every off-diagonal entry of A is ≤ 0; the discrete cross term is then nonpositive.
    [[nodiscard]] bool offdiagonal_nonpositive() const;

    void check_dimension(const Eigen::VectorXd& u) const;
};

/// Assemble interior matrix and exterior weights for the P1 space on `grid`.
///
/// Same-cell and touching-cell pairs are integrated in closed form; separated pairs use a
/// 16-point Gauss product rule. The grid is uniform, so each cell-pair block depends only on
/// the index offset and is computed once per offset.
QuadraticForm assemble_gagliardo(const Grid& grid, double alpha);

/// Lumped potential weights V_i · m_i. Throws HypothesisViolation if some V_i ≤ 0.
Eigen::VectorXd assemble_potential_mass(const Grid& grid, const Eigen::VectorXd& potential);

/// Convenience: assemble_gagliardo followed by assemble_potential_mass.
QuadraticForm assemble_form(const Grid& grid, double alpha, const Eigen::VectorXd& potential);

/// Writes the nonzero entries of A as `i,j,value` triplets.
void write_form_csv(const QuadraticForm& form, std::ostream& out);

/// Writes `i,x,exterior,potential` rows.
void write_weights_csv(const QuadraticForm& form, std::ostream& out);

namespace detail {

/// Closed-form integrals over the unit square used for touching cells:
/// I20 = ∫∫ ξ² (ξ+η)^{-1-p}, I11 = ∫∫ ξη (ξ+η)^{-1-p}, p = 2α.
struct TouchingIntegrals {
    double i20;
    double i11;
};
TouchingIntegrals touching_integrals(double p);

/// ∫_Ω φ_i(x) [(R-x)^{-p} + (R+x)^{-p}] dx for the hat φ_i of node i.
double hat_boundary_integral(const Grid& grid, Eigen::Index i, double p);

}  // namespace detail

}  // namespace fracnodal
