#include "fracnodal/quadratic_form.hpp"

#include "fracnodal/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <array>
#include <cmath>
#include <ostream>
#include <string>

namespace fracnodal {

namespace {

constexpr int kGaussOrder = 16;

struct GaussRule {
    std::array<double, kGaussOrder> points{};   // on [0, 1]
    std::array<double, kGaussOrder> weights{};  // sum to 1
};

GaussRule unit_gauss_rule() {
    using Rule = boost::math::quadrature::gauss<double, kGaussOrder>;
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    GaussRule rule;
    int k = 0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
        // Symmetric pairs ±z on [-1, 1]; 16 is even so there is no centre node.
        rule.points[k] = 0.5 * (1.0 - abscissa[i]);
        rule.weights[k++] = 0.5 * weights[i];
        rule.points[k] = 0.5 * (1.0 + abscissa[i]);
        rule.weights[k++] = 0.5 * weights[i];
    }
    return rule;
}

// ∫_1^2 w^r dw
double power_moment(double r) { return (std::pow(2.0, r + 1.0) - 1.0) / (r + 1.0); }

// ∫_0^1 ξ^k (1+ξ)^q dξ for k = 1, 2
double shifted_moment(int k, double q) {
    if (k == 1) return power_moment(q + 1.0) - power_moment(q);
    return power_moment(q + 2.0) - 2.0 * power_moment(q + 1.0) + power_moment(q);
}

// ∫_a^b (c0 + c1 r) r^{-p} dr with 0 ≤ a ≤ b
double linear_times_power(double c0, double c1, double a, double b, double p) {
    const double e1 = 1.0 - p;
    const double e2 = 2.0 - p;
    return c0 * (std::pow(b, e1) - std::pow(a, e1)) / e1 + c1 * (std::pow(b, e2) - std::pow(a, e2)) / e2;
}

// Integral of the hat against r^{-p} where r is the distance to one end of the domain.
// `distance` is r at the node; `toward` / `away` select which half of the hat exists.
double hat_against_distance_power(double distance, double h, double p, bool toward, bool away) {
    double total = 0.0;
    if (toward) {
        // r ∈ [D-h, D], φ = 1 - (D - r)/h
        total += linear_times_power(1.0 - distance / h, 1.0 / h, distance - h, distance, p);
    }
    if (away) {
        // r ∈ [D, D+h], φ = 1 - (r - D)/h
        total += linear_times_power(1.0 + distance / h, -1.0 / h, distance, distance + h, p);
    }
    return total;
}

template <int Size>
void scatter(Eigen::MatrixXd& matrix, const std::array<Eigen::Index, Size>& dofs,
             const Eigen::Matrix<double, Size, Size>& local, double scale) {
    for (int a = 0; a < Size; ++a) {
        for (int b = 0; b < Size; ++b) {
            matrix(dofs[a], dofs[b]) += scale * local(a, b);
        }
    }
}

}  // namespace

namespace detail {

TouchingIntegrals touching_integrals(double p) {
    const double i20 = (1.0 / (3.0 - p) - shifted_moment(2, -p)) / p;
    const double i11 = (shifted_moment(1, 1.0 - p) - 1.0 / (3.0 - p)) / (1.0 - p) - i20;
    return {i20, i11};
}

double hat_boundary_integral(const Grid& grid, Eigen::Index i, double p) {
    const Eigen::Index last = grid.size() - 1;
    const double h = grid.spacing;
    const double to_right = static_cast<double>(last - i) * h;
    const double to_left = static_cast<double>(i) * h;
    // (R - x)^{-p}: the half toward x = R exists unless i is the last node.
    const double right = hat_against_distance_power(to_right, h, p, i < last, i > 0);
    // (R + x)^{-p}: mirrored.
    const double left = hat_against_distance_power(to_left, h, p, i > 0, i < last);
    return right + left;
}

}  // namespace detail

void QuadraticForm::check_dimension(const Eigen::VectorXd& u) const {
    if (u.size() != size()) {
        throw ParameterError("state has " + std::to_string(u.size()) + " entries, grid has " +
                             std::to_string(size()));
    }
}

double QuadraticForm::seminorm_sq(const Eigen::VectorXd& u) const {
    check_dimension(u);
    return u.dot(interior * u) + exterior_weights.dot(u.cwiseAbs2());
}

double QuadraticForm::norm_sq(const Eigen::VectorXd& u) const {
    return seminorm_sq(u) + potential_mass.dot(u.cwiseAbs2());
}

double QuadraticForm::inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    check_dimension(v);
    return v.dot(apply(u));
}

Eigen::VectorXd QuadraticForm::apply(const Eigen::VectorXd& u) const {
    check_dimension(u);
    Eigen::VectorXd result = interior * u;
    result.array() += (exterior_weights + potential_mass).array() * u.array();
    return result;
}

Eigen::MatrixXd QuadraticForm::norm_operator() const {
    Eigen::MatrixXd s = interior;
    s.diagonal() += exterior_weights + potential_mass;
    return s;
}

double QuadraticForm::kernel_weight(Eigen::Index i, Eigen::Index j) const {
    if (i == j) {
        throw ParameterError("kernel_weight is defined for distinct nodes only");
    }
    return -0.5 * interior(i, j);
}

bool QuadraticForm::offdiagonal_nonpositive() const {
    for (Eigen::Index j = 0; j < size(); ++j) {
        for (Eigen::Index i = 0; i < size(); ++i) {
            if (i != j && interior(i, j) > 0.0) return false;
        }
    }
    return true;
}

QuadraticForm assemble_gagliardo(const Grid& grid, double alpha) {
    check_fractional_order(grid.dimension, alpha);
    if (grid.dimension != 1) {
        throw UnsupportedRegime("only N = 1 assembly is implemented");
    }
    const Eigen::Index n = grid.size();
    if (n < 3) {
        throw ParameterError("grid needs at least 3 nodes");
    }
    const double p = 2.0 * alpha;
    const double h = grid.spacing;
    const Eigen::Index cells = n - 1;

    QuadraticForm form;
    form.grid = grid;
    form.alpha = alpha;
    form.interior = Eigen::MatrixXd::Zero(n, n);
    form.potential_mass = Eigen::VectorXd::Zero(n);

    Eigen::MatrixXd& a = form.interior;

    // Same cell: u linear, so |u(x)-u(y)|² = slope² |x-y|².
    {
        const double k = 2.0 * std::pow(h, 1.0 - p) / ((2.0 - p) * (3.0 - p));
        Eigen::Matrix2d local;
        local << 1.0, -1.0, -1.0, 1.0;
        for (Eigen::Index c = 0; c < cells; ++c) {
            scatter<2>(a, {c, c + 1}, local, k);
        }
    }

    // Touching cells sharing node c+1; both orderings of the pair.
    if (cells >= 2) {
        const auto ti = detail::touching_integrals(p);
        const Eigen::Vector3d pv(1.0, -1.0, 0.0);
        const Eigen::Vector3d qv(0.0, -1.0, 1.0);
        const Eigen::Matrix3d local =
            ti.i20 * (pv * pv.transpose() + qv * qv.transpose()) - ti.i11 * (pv * qv.transpose() + qv * pv.transpose());
        const double k = 2.0 * std::pow(h, 1.0 - p);
        for (Eigen::Index c = 0; c + 2 < n; ++c) {
            scatter<3>(a, {c, c + 1, c + 2}, local, k);
        }
    }

    // Separated cells: Gauss product rule, one block per offset.
    const GaussRule rule = unit_gauss_rule();
    for (Eigen::Index d = 2; d < cells; ++d) {
        Eigen::Matrix4d local = Eigen::Matrix4d::Zero();
        for (int ia = 0; ia < kGaussOrder; ++ia) {
            const double xi = rule.points[ia];
            for (int ib = 0; ib < kGaussOrder; ++ib) {
                const double eta = rule.points[ib];
                const double dist = h * (static_cast<double>(d) + eta - xi);
                const double w = rule.weights[ia] * rule.weights[ib] * h * h * std::pow(dist, -1.0 - p);
                const Eigen::Vector4d e(1.0 - xi, xi, -(1.0 - eta), -eta);
                local.noalias() += w * (e * e.transpose());
            }
        }
        for (Eigen::Index c = 0; c + d < cells; ++c) {
            scatter<4>(a, {c, c + 1, c + d, c + d + 1}, local, 2.0);
        }
    }

    form.exterior_weights.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        form.exterior_weights[i] = 2.0 / p * detail::hat_boundary_integral(grid, i, p);
    }
    return form;
}

Eigen::VectorXd assemble_potential_mass(const Grid& grid, const Eigen::VectorXd& potential) {
    if (potential.size() != grid.size()) {
        throw ParameterError("potential has " + std::to_string(potential.size()) + " samples, grid has " +
                             std::to_string(grid.size()));
    }
    for (Eigen::Index i = 0; i < potential.size(); ++i) {
        if (!(potential[i] > 0.0) || !std::isfinite(potential[i])) {
            throw HypothesisViolation("V must be positive (h1): V(" + std::to_string(grid[i]) +
                                      ") = " + std::to_string(potential[i]));
        }
    }
    return potential.cwiseProduct(grid.nodal_mass());
}

QuadraticForm assemble_form(const Grid& grid, double alpha, const Eigen::VectorXd& potential) {
    QuadraticForm form = assemble_gagliardo(grid, alpha);
    form.potential_mass = assemble_potential_mass(grid, potential);
    return form;
}

void write_form_csv(const QuadraticForm& form, std::ostream& out) {
    out << "i,j,value\n";
    const auto precision = out.precision(17);
    for (Eigen::Index i = 0; i < form.size(); ++i) {
        for (Eigen::Index j = 0; j < form.size(); ++j) {
            const double value = form.interior(i, j);
            if (value != 0.0) out << i << ',' << j << ',' << value << '\n';
        }
    }
    out.precision(precision);
}

void write_weights_csv(const QuadraticForm& form, std::ostream& out) {
    out << "i,x,exterior,potential\n";
    const auto precision = out.precision(17);
    for (Eigen::Index i = 0; i < form.size(); ++i) {
        out << i << ',' << form.grid[i] << ',' << form.exterior_weights[i] << ',' << form.potential_mass[i] << '\n';
    }
    out.precision(precision);
}

}  // namespace fracnodal
