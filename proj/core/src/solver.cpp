#include "fracnodal/solver.hpp"

#include "fracnodal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fracnodal {

namespace {

struct Projected {
    State state;
    double energy;
};

std::optional<Projected> project_ground(const EnergyFunctional& functional, const State& v,
                                        const SolverOptions& options) {
    try {
        const RaySlice ray(functional, v);
        const double t = scalar_projection(functional, v, options.scalar_rel_width);
        return Projected{t * v, ray.value(t)};
    } catch (const ParameterError&) {
        return std::nullopt;
    } catch (const DivergenceError&) {
        return std::nullopt;
    }
}

std::optional<Projected> project_nodal(const EnergyFunctional& functional, const State& v,
                                       const SolverOptions& options) {
    if (!changes_sign(v)) return std::nullopt;
    try {
        const NodalSlice slice(functional, v);
        const NodalScales scales = nodal_projection(slice, options.projection);
        if (!scales.converged) return std::nullopt;
        return Projected{scales.t_plus * slice.plus() + scales.s_minus * slice.minus(),
                         slice.value(scales.t_plus, scales.s_minus)};
    } catch (const DivergenceError&) {
        return std::nullopt;
    }
}

template <class Project>
SolveReport descend(const EnergyFunctional& functional, const State& seed, const SolverOptions& options,
                    Project&& project, bool nodal) {
    SolveReport report;
    auto start = project(seed);
    if (!start) {
        throw DivergenceError("seed could not be projected onto the constraint set");
    }
    State u = std::move(start->state);
    double energy = start->energy;
    report.energy_trace.push_back(energy);

    double residual = 0.0;
    for (;;) {
        const Eigen::VectorXd grad = functional.gradient(u);
        const Eigen::VectorXd g = functional.solve_norm_operator(grad);
        const double slope = std::max(grad.dot(g), 0.0);
        residual = std::sqrt(slope);
        if (residual <= options.tol) {
            report.status = SolveStatus::converged;
            break;
        }
        if (report.iterations >= options.max_iter) {
            report.status = SolveStatus::max_iterations;
            report.message = "iteration limit reached";
            break;
        }

        double step = options.initial_step;
        std::optional<Projected> accepted;
        for (int k = 0; k <= options.max_backtracks; ++k, step *= 0.5) {
            auto trial = project(State(u - step * g));
            if (trial && trial->energy <= energy - options.armijo * step * slope) {
                accepted = std::move(trial);
                break;
            }
        }
        if (!accepted) {
            report.status = SolveStatus::line_search_failed;
            report.message = "no step satisfied the Armijo condition";
            break;
        }
        u = std::move(accepted->state);
        energy = accepted->energy;
        report.energy_trace.push_back(energy);
        ++report.iterations;

        if (nodal) {
            const auto [plus, minus] = split(u);
            const double plus_norm = std::sqrt(functional.form().norm_sq(plus));
            const double minus_norm = std::sqrt(functional.form().norm_sq(minus));
            if (std::min(plus_norm, minus_norm) < options.beta) {
                report.status = SolveStatus::nodal_collapse;
                report.message = "a signed part collapsed below beta (seed too close to a one-signed basin)";
                break;
            }
        }
    }

    report.final_state = std::move(u);
    report.energy = energy;
    report.residual = residual;
    report.sign_change = changes_sign(report.final_state);
    if (report.converged() && !(energy > 0.0)) {
        report.message = "converged energy is not positive";
    }
    return report;
}

}  // namespace

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::line_search_failed: return "line_search_failed";
        case SolveStatus::nodal_collapse: return "nodal_collapse";
    }
    return "unknown";
}

State seed_lobes(const Grid& grid, std::span<const Lobe> lobes) {
    State u = State::Zero(grid.size());
    for (const auto& lobe : lobes) {
        if (!(std::abs(lobe.center) < grid.radius)) {
            throw ParameterError("seed centre " + std::to_string(lobe.center) + " lies outside (-R, R)");
        }
        if (!(lobe.width > 0.0)) {
            throw ParameterError("seed width must be positive");
        }
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double z = (grid[i] - lobe.center) / lobe.width;
            u[i] += lobe.amplitude * std::exp(-z * z);
        }
    }
    if (u.cwiseAbs().maxCoeff() == 0.0) {
        throw ParameterError("seed is identically zero");
    }
    return u;
}

State seed_nodal(const Grid& grid, double x_minus, double x_plus, double width, double amplitude) {
    if (amplitude == 0.0) {
        throw ParameterError("seed amplitude must be nonzero");
    }
    const Lobe lobes[] = {{x_plus, width, amplitude}, {x_minus, width, -amplitude}};
    return seed_lobes(grid, lobes);
}

bool changes_sign(const State& u) {
    return u.size() > 0 && u.maxCoeff() > 0.0 && u.minCoeff() < 0.0;
}

SolveReport solve_ground(const EnergyFunctional& functional, const State& seed, const SolverOptions& options) {
    functional.form().check_dimension(seed);
    if (seed.cwiseAbs().maxCoeff() == 0.0) {
        throw ParameterError("ground-state seed must be nonzero");
    }
    return descend(
        functional, seed, options, [&](const State& v) { return project_ground(functional, v, options); }, false);
}

SolveReport solve_nodal(const EnergyFunctional& functional, const State& seed, const SolverOptions& options) {
    functional.form().check_dimension(seed);
    if (!changes_sign(seed)) {
        throw ParameterError("nodal seed must have nonzero positive and negative parts");
    }
    SolveReport report = descend(
        functional, seed, options, [&](const State& v) { return project_nodal(functional, v, options); }, true);
    if (changes_sign(report.final_state)) {
        report.scales_at_end = nodal_projection(functional, report.final_state, options.projection);
    }
    return report;
}

double orbit_distance(const State& u, const State& v) {
    const double scale = std::max(u.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff());
    if (scale == 0.0) return 0.0;
    const double same = (u - v).cwiseAbs().maxCoeff();
    const double flipped = (u + v).cwiseAbs().maxCoeff();
    return std::min(same, flipped) / scale;
}

std::vector<MultistartEntry> multistart(const EnergyFunctional& functional, std::span<const State> seeds,
                                        const SolverOptions& options) {
    if (!functional.params().is_odd()) {
        throw ParameterError("multistart needs an odd nonlinearity (odd_power)");
    }
    std::vector<MultistartEntry> found;
    for (std::size_t index = 0; index < seeds.size(); ++index) {
        const State& seed = seeds[index];
        SolveReport report =
            changes_sign(seed) ? solve_nodal(functional, seed, options) : solve_ground(functional, seed, options);
        if (!report.converged()) continue;
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const MultistartEntry& entry) {
            const double gap = std::abs(entry.report.energy - report.energy) /
                               std::max(std::abs(entry.report.energy), std::abs(report.energy));
            return gap <= 1e-4 && orbit_distance(entry.report.final_state, report.final_state) <= 1e-2;
        });
        if (!duplicate) found.push_back({index, std::move(report)});
    }
    return found;
}

}  // namespace fracnodal
