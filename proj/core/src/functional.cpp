#include "fracnodal/functional.hpp"

#include "fracnodal/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <mutex>
#include <string>

namespace fracnodal {

std::pair<State, State> split(const State& u) {
    return {u.cwiseMax(0.0), u.cwiseMin(0.0)};
}

double cross_term(const QuadraticForm& form, const State& u_plus, const State& u_minus) {
    form.check_dimension(u_plus);
    form.check_dimension(u_minus);
    if ((u_plus.array() < 0.0).any()) {
        throw ParameterError("cross_term: positive part has a negative entry");
    }
    if ((u_minus.array() > 0.0).any()) {
        throw ParameterError("cross_term: negative part has a positive entry");
    }
    return -u_plus.dot(form.interior * u_minus);
}

struct EnergyFunctional::Factorization {
    std::once_flag once;
    Eigen::LLT<Eigen::MatrixXd> llt;
    bool ok = false;
};

EnergyFunctional::EnergyFunctional(std::shared_ptr<const QuadraticForm> form, NonlinearityParams params,
                                   Eigen::VectorXd k)
    : form_(std::move(form)), params_(params), k_(std::move(k)), cache_(std::make_shared<Factorization>()) {
    if (!form_) {
        throw ParameterError("EnergyFunctional needs a quadratic form");
    }
    if (k_.size() != form_->size()) {
        throw ParameterError("K has " + std::to_string(k_.size()) + " samples, grid has " +
                             std::to_string(form_->size()));
    }
    for (Eigen::Index i = 0; i < k_.size(); ++i) {
        if (!(k_[i] > 0.0) || !std::isfinite(k_[i])) {
            throw HypothesisViolation("K must be positive (h1): K(" + std::to_string(form_->grid[i]) +
                                      ") = " + std::to_string(k_[i]));
        }
    }
    weights_ = k_.cwiseProduct(form_->grid.nodal_mass());
}

double EnergyFunctional::potential_term(const State& u) const {
    form_->check_dimension(u);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        sum += weights_[i] * F_eval(params_, u[i]);
    }
    return sum;
}

double EnergyFunctional::energy(const State& u) const {
    return 0.5 * form_->norm_sq(u) - potential_term(u);
}

Eigen::VectorXd EnergyFunctional::gradient(const State& u) const {
    Eigen::VectorXd g = form_->apply(u);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        g[i] -= weights_[i] * f_eval(params_, u[i]);
    }
    return g;
}

double EnergyFunctional::pairing(const State& u, const State& v) const {
    form_->check_dimension(v);
    return gradient(u).dot(v);
}

EnergySplit EnergyFunctional::energy_split(const State& u) const {
    const auto [plus, minus] = split(u);
    EnergySplit out;
    out.total = energy(u);
    out.plus = energy(plus);
    out.minus = energy(minus);
    out.cross = cross_term(*form_, plus, minus);
    return out;
}

const EnergyFunctional::Factorization& EnergyFunctional::factorization() const {
    std::call_once(cache_->once, [this] {
        cache_->llt.compute(form_->norm_operator());
        cache_->ok = cache_->llt.info() == Eigen::Success;
    });
    if (!cache_->ok) {
        throw AssemblyError("norm operator is not positive definite (is V > 0 everywhere?)");
    }
    return *cache_;
}

Eigen::VectorXd EnergyFunctional::solve_norm_operator(const Eigen::VectorXd& rhs) const {
    form_->check_dimension(rhs);
    return factorization().llt.solve(rhs);
}

State EnergyFunctional::sobolev_gradient(const State& u) const {
    return solve_norm_operator(gradient(u));
}

}  // namespace fracnodal
