#include "oracles.hpp"

#include <fracnodal/coefficients.hpp>
#include <fracnodal/errors.hpp>
#include <fracnodal/solver.hpp>

#include <doctest.h>

using namespace fracnodal;

namespace {

// Coarse grid: the assertions below are structural and do not need n = 801.
struct Problem {
    Grid grid;
    std::shared_ptr<const QuadraticForm> form;
    EnergyFunctional functional;

    explicit Problem(PotentialPreset preset = PotentialPreset::constant, int n = 201)
        : grid(build_grid(20.0, n)), form(make_form(grid, preset)), functional(form, {}, coefficients(grid, preset).k) {}

    static CoefficientPair coefficients(const Grid& g, PotentialPreset preset) {
        CoefficientOptions o;
        o.preset = preset;
        return make_coefficients(g, o);
    }
    static std::shared_ptr<const QuadraticForm> make_form(const Grid& g, PotentialPreset preset) {
        return std::make_shared<const QuadraticForm>(assemble_form(g, 0.4, coefficients(g, preset).v));
    }
};

State bump(const Grid& g, double centre = 0.0, double amplitude = 1.0) {
    const Lobe lobe{centre, 1.0, amplitude};
    return seed_lobes(g, std::span<const Lobe>(&lobe, 1));
}

}  // namespace

TEST_CASE("seeds") {
    const Grid g = build_grid(20.0, 201);
    const State u = seed_nodal(g, -1.0, 1.0, 0.5, 1.0);
    CHECK(changes_sign(u));
    const auto [p, m] = split(u);
    for (Eigen::Index i = 0; i < g.size(); ++i) CHECK(p[i] == doctest::Approx(-m[g.size() - 1 - i]).epsilon(1e-14));
    CHECK_THROWS_AS(seed_nodal(g, -1.0, 1.0, 0.5, 0.0), ParameterError);
    CHECK_THROWS_AS(seed_nodal(g, -25.0, 1.0, 0.5, 1.0), ParameterError);
    CHECK_THROWS_AS(seed_nodal(g, -1.0, 1.0, 0.0, 1.0), ParameterError);
    CHECK_FALSE(changes_sign(bump(g)));
}

TEST_CASE("ground state") {
    const Problem pb;
    const SolveReport r = solve_ground(pb.functional, bump(pb.grid));
    REQUIRE(r.converged());
    CHECK(r.residual <= 1e-6);
    CHECK_FALSE(r.sign_change);
    CHECK(r.energy > 0.0);
    // J = (1/2 − 1/m) ‖u‖² on the Nehari set of a pure power.
    CHECK(r.energy == doctest::Approx(0.25 * pb.form->norm_sq(r.final_state)).epsilon(1e-6));
    for (std::size_t k = 1; k < r.energy_trace.size(); ++k) CHECK(r.energy_trace[k] < r.energy_trace[k - 1]);
    CHECK(membership(pb.functional, r.final_state).in_nehari);
    CHECK_FALSE(membership(pb.functional, r.final_state).in_nodal_set);
    CHECK_THROWS_AS(solve_ground(pb.functional, State::Zero(pb.grid.size())), ParameterError);
}

TEST_CASE("nodal state, constant coefficients") {
    const Problem pb;
    const SolveReport ground = solve_ground(pb.functional, bump(pb.grid));
    const SolveReport r = solve_nodal(pb.functional, seed_nodal(pb.grid, -1.0, 1.0, 0.5, 1.0));
    REQUIRE(r.converged());
    CHECK(r.sign_change);
    CHECK(r.energy > ground.energy + 1e-8);
    REQUIRE(r.scales_at_end.has_value());
    CHECK(std::abs(r.scales_at_end->t_plus - 1.0) <= 1e-4);
    CHECK(std::abs(r.scales_at_end->s_minus - 1.0) <= 1e-4);
    for (std::size_t k = 1; k < r.energy_trace.size(); ++k) CHECK(r.energy_trace[k] <= r.energy_trace[k - 1]);

    const auto [p, m] = split(r.final_state);
    const State grad = pb.functional.gradient(r.final_state);
    CHECK(std::abs(grad.dot(p)) + std::abs(grad.dot(m)) <= 2.0 * 1e-6 * std::sqrt(pb.form->norm_sq(r.final_state)));
    CHECK(membership(pb.functional, r.final_state).in_nodal_set);

    // Odd seed and even coefficients give an odd state.
    const Eigen::Index n = pb.grid.size();
    const double sup = r.final_state.cwiseAbs().maxCoeff();
    double defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) defect = std::max(defect, std::abs(r.final_state[i] + r.final_state[n - 1 - i]));
    CHECK(defect <= 1e-4 * sup);

    CHECK_THROWS_AS(solve_nodal(pb.functional, bump(pb.grid)), ParameterError);
}

TEST_CASE("nodal state, logarithmic tail") {
    const Problem pb(PotentialPreset::log_tail);
    const SolveReport r = solve_nodal(pb.functional, seed_nodal(pb.grid, -1.0, 1.0, 0.5, 1.0));
    CHECK(r.converged());
    CHECK(r.sign_change);
}

TEST_CASE("iteration limit is reported, not thrown") {
    const Problem pb;
    SolverOptions o;
    o.max_iter = 2;
    const SolveReport r = solve_nodal(pb.functional, seed_nodal(pb.grid, -1.0, 1.0, 0.5, 1.0), o);
    CHECK(r.status == SolveStatus::max_iterations);
    CHECK(r.iterations == 2);
    CHECK(r.energy_trace.size() == 3);
    CHECK_FALSE(r.converged());
}

TEST_CASE("orbit distance") {
    const Grid g = build_grid(20.0, 201);
    const State u = bump(g, 2.0);
    CHECK(orbit_distance(u, u) == 0.0);
    CHECK(orbit_distance(u, State(-u)) == 0.0);
    CHECK(orbit_distance(u, bump(g, -2.0)) > 0.5);
}

TEST_CASE("multistart") {
    const Problem pb;
    const Grid& g = pb.grid;
    const Lobe two[] = {{-3.0, 1.0, 1.0}, {3.0, 1.0, 1.0}};
    const Lobe three[] = {{-3.0, 0.7, 1.0}, {0.0, 0.7, -1.0}, {3.0, 0.7, 1.0}};
    const std::vector<State> seeds = {bump(g), seed_lobes(g, two), seed_lobes(g, three), State(-bump(g)),
                                      bump(g)};
    const auto found = multistart(pb.functional, seeds);
    REQUIRE(found.size() >= 2);
    double ground = HUGE_VAL;
    double nodal = HUGE_VAL;
    for (const auto& e : found) {
        (e.report.sign_change ? nodal : ground) = std::min(e.report.sign_change ? nodal : ground, e.report.energy);
    }
    CHECK(ground < nodal);
    // −u and the repeated seed are not new entries.
    for (const auto& e : found) {
        CHECK(e.seed_index != 3);
        CHECK(e.seed_index != 4);
    }

    const EnergyFunctional one_sided(pb.form, {NonlinearityModel::positive_power, 4.0},
                                     Eigen::VectorXd::Ones(g.size()));
    CHECK_THROWS_AS(multistart(one_sided, seeds), ParameterError);
}
