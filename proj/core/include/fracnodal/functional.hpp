#pragma once

#include "fracnodal/nonlinearity.hpp"
#include "fracnodal/quadratic_form.hpp"

#include <Eigen/Core>

#include <memory>
#include <utility>

namespace fracnodal {

/// Nodal values of a P1 function on the grid.
using State = Eigen::VectorXd;

/// J(u) = J(u⁺) + J(u⁻) − cross.
struct EnergySplit {
    double total = 0.0;
    double plus = 0.0;
    double minus = 0.0;
    double cross = 0.0;
};

/// Componentwise u⁺ = max(u, 0), u⁻ = min(u, 0).
std::pair<State, State> split(const State& u);

/// B(u⁺, u⁻) = ∫∫ [u⁺(x)u⁻(y) + u⁻(x)u⁺(y)] |x-y|^{-1-2α}, realised with the assembled kernel
/// weights as −u⁺ᵀ A u⁻. Throws ParameterError if u_plus has a negative or u_minus a positive entry.
double cross_term(const QuadraticForm& form, const State& u_plus, const State& u_minus);

/// J(u) = ½‖u‖² − Σ K_i F(u_i) m_i on a fixed form, nonlinearity and K.
class EnergyFunctional {
public:
    EnergyFunctional(std::shared_ptr<const QuadraticForm> form, NonlinearityParams params, Eigen::VectorXd k);

    [[nodiscard]] const QuadraticForm& form() const noexcept { return *form_; }
    [[nodiscard]] const std::shared_ptr<const QuadraticForm>& form_ptr() const noexcept { return form_; }
    [[nodiscard]] const NonlinearityParams& params() const noexcept { return params_; }
    [[nodiscard]] const Eigen::VectorXd& k() const noexcept { return k_; }
    /// K_i m_i, the quadrature weights of the nonlinear terms.
    [[nodiscard]] const Eigen::VectorXd& nonlinear_weights() const noexcept { return weights_; }
    [[nodiscard]] Eigen::Index size() const noexcept { return form_->size(); }

    [[nodiscard]] double energy(const State& u) const;
    /// Σ K_i F(u_i) m_i.
    [[nodiscard]] double potential_term(const State& u) const;
    /// Nodal gradient ∇J(u) = S u − K∘f(u)∘m, so that ⟨J′(u), v⟩ = ∇J(u)·v.
    [[nodiscard]] Eigen::VectorXd gradient(const State& u) const;
    /// ⟨J′(u), v⟩.
    [[nodiscard]] double pairing(const State& u, const State& v) const;
    [[nodiscard]] EnergySplit energy_split(const State& u) const;

    /// Riesz representative g of J′(u) in the X inner product: S g = ∇J(u).
    [[nodiscard]] State sobolev_gradient(const State& u) const;
    /// Solves S x = rhs with the cached Cholesky factor of the norm operator.
    [[nodiscard]] Eigen::VectorXd solve_norm_operator(const Eigen::VectorXd& rhs) const;

private:
    struct Factorization;

    const Factorization& factorization() const;

    std::shared_ptr<const QuadraticForm> form_;
    NonlinearityParams params_;
    Eigen::VectorXd k_;
    Eigen::VectorXd weights_;
    std::shared_ptr<Factorization> cache_;
};

}  // namespace fracnodal
