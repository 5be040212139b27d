#include "fracnodal/nehari.hpp"

#include "fracnodal/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <limits>

namespace fracnodal {

namespace {

// The log model needs scales near exp(norm / L2 mass), so the bracket may have to reach far.
constexpr int kMaxBracketSteps = 1000;

std::string scale_text(double scale) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", scale);
    return buf;
}

// Root of a function that is positive on (0, root) and negative beyond, searched strictly in t > 0.
template <class Fn>
double positive_root(Fn&& g, double start, double rel_width, const char* what) {
    double lo = start;
    double hi = start;
    const double g0 = g(start);
    if (g0 == 0.0) return start;
    if (g0 > 0.0) {
        double value = g0;
        for (int k = 0; value > 0.0; ++k) {
            if (k == kMaxBracketSteps || !std::isfinite(hi * 2.0)) {
                throw DivergenceError(std::string(what) + ": derivative stays positive up to scale " + scale_text(hi));
            }
            lo = hi;
            hi *= 2.0;
            value = g(hi);
        }
        if (value == 0.0) return hi;
    } else {
        double value = g0;
        for (int k = 0; value < 0.0; ++k) {
            if (k == kMaxBracketSteps || lo * 0.5 == 0.0) {
                throw DivergenceError(std::string(what) + ": derivative stays negative down to scale " + scale_text(lo));
            }
            hi = lo;
            lo *= 0.5;
            value = g(lo);
        }
        if (value == 0.0) return lo;
    }
    std::uintmax_t max_iter = 200;
    const auto done = [rel_width](double a, double b) {
        return std::abs(b - a) <= rel_width * std::max(std::abs(a), std::abs(b));
    };
    const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, done, max_iter);
    return 0.5 * (a + b);
}

double weighted_f_pairing(const EnergyFunctional& functional, const State& part, double scale) {
    const auto& w = functional.nonlinear_weights();
    const auto& params = functional.params();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < part.size(); ++i) {
        if (part[i] != 0.0) sum += w[i] * f_eval(params, scale * part[i]) * part[i];
    }
    return sum;
}

double weighted_F(const EnergyFunctional& functional, const State& part, double scale) {
    const auto& w = functional.nonlinear_weights();
    const auto& params = functional.params();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < part.size(); ++i) {
        if (part[i] != 0.0) sum += w[i] * F_eval(params, scale * part[i]);
    }
    return sum;
}

}  // namespace

namespace detail {

RayTerms::RayTerms(const EnergyFunctional& functional, State direction)
    : functional_(&functional), v_(std::move(direction)), degree_(homogeneity_degree(functional.params())) {
    if (degree_) {
        primitive_at_one_ = weighted_F(functional, v_, 1.0);
        pairing_at_one_ = weighted_f_pairing(functional, v_, 1.0);
    }
}

double RayTerms::primitive(double scale) const {
    if (degree_ && scale >= 0.0) return std::pow(scale, *degree_) * primitive_at_one_;
    return weighted_F(*functional_, v_, scale);
}

double RayTerms::pairing(double scale) const {
    if (degree_ && scale >= 0.0) return std::pow(scale, *degree_ - 1.0) * pairing_at_one_;
    return weighted_f_pairing(*functional_, v_, scale);
}

}  // namespace detail

RaySlice::RaySlice(const EnergyFunctional& functional, const State& u)
    : terms_(functional, u), norm_sq_(functional.form().norm_sq(u)) {
    if (u.cwiseAbs().maxCoeff() == 0.0) {
        throw ParameterError("ray slice needs u != 0");
    }
}

double RaySlice::value(double t) const { return 0.5 * t * t * norm_sq_ - terms_.primitive(t); }

double RaySlice::derivative(double t) const { return t * norm_sq_ - terms_.pairing(t); }

namespace {

std::pair<State, State> checked_split(const EnergyFunctional& functional, const State& u) {
    functional.form().check_dimension(u);
    auto parts = split(u);
    if (parts.first.maxCoeff() == 0.0 || parts.second.minCoeff() == 0.0) {
        throw ParameterError("nodal projection needs u+ != 0 and u- != 0");
    }
    return parts;
}

}  // namespace

NodalSlice::NodalSlice(const EnergyFunctional& functional, const State& u)
    : NodalSlice(functional, checked_split(functional, u)) {}

NodalSlice::NodalSlice(const EnergyFunctional& functional, std::pair<State, State> parts)
    : plus_(functional, std::move(parts.first)), minus_(functional, std::move(parts.second)) {
    const auto& form = functional.form();
    const Eigen::VectorXd s_plus = form.apply(plus());
    a_ = plus().dot(s_plus);
    c_ = minus().dot(s_plus);
    b_ = form.norm_sq(minus());
}

double NodalSlice::value(double t, double s) const {
    return 0.5 * (a_ * t * t + 2.0 * c_ * t * s + b_ * s * s) - plus_.primitive(t) - minus_.primitive(s);
}

std::array<double, 2> NodalSlice::gradient(double t, double s) const {
    return {a_ * t + c_ * s - plus_.pairing(t), b_ * s + c_ * t - minus_.pairing(s)};
}

ProjectionScaleRange sample_projection_scales(const EnergyFunctional& functional, std::span<const State> directions) {
    if (directions.empty()) throw ParameterError("sample_projection_scales needs at least one direction");
    ProjectionScaleRange out;
    out.min = HUGE_VAL;
    out.max = 0.0;
    for (const State& v : directions) {
        const double norm = std::sqrt(functional.form().norm_sq(v));
        if (!(norm > 0.0)) throw ParameterError("sample_projection_scales needs nonzero directions");
        const double t = scalar_projection(functional, State(v / norm));
        out.min = std::min(out.min, t);
        out.max = std::max(out.max, t);
        ++out.samples;
    }
    return out;
}

double h_scalar(const EnergyFunctional& functional, const State& u, double t) {
    return RaySlice(functional, u).value(t);
}

double h_scalar_deriv(const EnergyFunctional& functional, const State& u, double t) {
    return RaySlice(functional, u).derivative(t);
}

double scalar_projection(const EnergyFunctional& functional, const State& u, double rel_width) {
    const RaySlice ray(functional, u);
    return positive_root([&](double x) { return ray.derivative(x); }, 1.0, rel_width, "scalar projection");
}

double h_nodal(const EnergyFunctional& functional, const State& u, double t, double s) {
    return NodalSlice(functional, u).value(t, s);
}

std::array<double, 2> phi_grad(const EnergyFunctional& functional, const State& u, double t, double s) {
    return NodalSlice(functional, u).gradient(t, s);
}

double phi1(const NodalSlice& slice, double s, double rel_width) {
    if (s < 0.0) throw ParameterError("phi1 needs s >= 0");
    return positive_root([&](double t) { return slice.gradient(t, s)[0]; }, 1.0, rel_width, "phi1");
}

double phi2(const NodalSlice& slice, double t, double rel_width) {
    if (t < 0.0) throw ParameterError("phi2 needs t >= 0");
    return positive_root([&](double s) { return slice.gradient(t, s)[1]; }, 1.0, rel_width, "phi2");
}

double phi1(const EnergyFunctional& functional, const State& u, double s, double rel_width) {
    return phi1(NodalSlice(functional, u), s, rel_width);
}

double phi2(const EnergyFunctional& functional, const State& u, double t, double rel_width) {
    return phi2(NodalSlice(functional, u), t, rel_width);
}

NodalScales nodal_projection(const EnergyFunctional& functional, const State& u, const ProjectionOptions& options) {
    return nodal_projection(NodalSlice(functional, u), options);
}

NodalScales nodal_projection(const NodalSlice& slice, const ProjectionOptions& options) {
    const double scale = 1.0 + slice.plus_norm_sq() + slice.minus_norm_sq() + 2.0 * slice.coupling();
    const double threshold = options.tol * scale;
    const auto residual = [&](double t, double s) {
        const auto g = slice.gradient(t, s);
        return std::max(std::abs(g[0]), std::abs(g[1]));
    };

    NodalScales out;
    double t = 1.0;
    double s = 1.0;
    double res = residual(t, s);
    out.method = "fixed_point";

    // Simultaneous update T(t, s) = (φ₁(s), φ₂(t)).
    double best = res;
    int since_best = 0;
    while (res > threshold && out.iterations < options.max_iter) {
        const double t_next = phi1(slice, s);
        const double s_next = phi2(slice, t);
        t = t_next;
        s = s_next;
        res = residual(t, s);
        ++out.iterations;
        if (res < 0.5 * best) {
            best = res;
            since_best = 0;
        } else if (++since_best >= 8) {
            break;
        }
    }

    // Alternating maximisation increases h^u monotonically.
    if (res > threshold) {
        out.method = "coordinate_ascent";
        while (res > threshold && out.iterations < options.max_iter) {
            t = phi1(slice, s);
            s = phi2(slice, t);
            res = residual(t, s);
            ++out.iterations;
        }
    }

    out.t_plus = t;
    out.s_minus = s;
    out.residual = res;
    out.converged = res <= threshold;
    if (!out.converged) {
        out.method += " (max_iter reached)";
        return out;
    }

    const double peak = slice.value(t, s);
    const int m = std::max(options.validation_grid, 2);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            const double value = slice.value(3.0 * t * i / m, 3.0 * s * j / m);
            if (value > peak + 1e-12 * (1.0 + std::abs(peak))) {
                out.converged = false;
                out.method += " (grid scan found a larger value)";
                return out;
            }
        }
    }
    return out;
}

SignProfile sign_profile(const EnergyFunctional& functional, const State& u, const NodalScales& scales,
                         const std::vector<double>& radii) {
    const NodalSlice slice(functional, u);
    SignProfile profile;
    profile.rows.reserve(radii.size());
    for (const double r : radii) {
        SignProfileRow row{r, slice.gradient(r, scales.s_minus)[0] * r, slice.gradient(scales.t_plus, r)[1] * r};
        const auto judge = [&](double value, double critical) {
            if (std::abs(r - critical) <= 1e-9 * critical) return;
            const bool expected_positive = r < critical;
            if ((expected_positive && !(value > 0.0)) || (!expected_positive && !(value < 0.0))) {
                profile.pattern_ok = false;
            }
        };
        if (r > 0.0) {
            judge(row.a_plus, scales.t_plus);
            judge(row.a_minus, scales.s_minus);
        }
        profile.rows.push_back(row);
    }
    return profile;
}

MembershipReport membership(const EnergyFunctional& functional, const State& u, double beta, double tol) {
    MembershipReport report;
    const auto& form = functional.form();
    form.check_dimension(u);
    const auto [plus, minus] = split(u);
    const Eigen::VectorXd grad = functional.gradient(u);
    const double norm_sq = form.norm_sq(u);
    const double threshold = tol * (1.0 + norm_sq);

    report.plus_residual = std::abs(grad.dot(plus));
    report.minus_residual = std::abs(grad.dot(minus));
    report.nehari_residual = std::abs(grad.dot(u));
    report.plus_norm = std::sqrt(form.norm_sq(plus));
    report.minus_norm = std::sqrt(form.norm_sq(minus));

    const bool nonzero = u.cwiseAbs().maxCoeff() > 0.0;
    report.in_nehari = nonzero && report.nehari_residual <= threshold;
    report.in_nodal_set = report.in_nehari && report.plus_norm >= beta && report.minus_norm >= beta &&
                          report.plus_residual <= threshold && report.minus_residual <= threshold;
    return report;
}

}  // namespace fracnodal
