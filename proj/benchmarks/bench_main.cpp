#include <fracnodal/functional.hpp>
#include <fracnodal/grid.hpp>
#include <fracnodal/nehari.hpp>
#include <fracnodal/quadratic_form.hpp>
#include <fracnodal/solver.hpp>

#include <benchmark/benchmark.h>

#include <memory>

using namespace fracnodal;

namespace {

constexpr double kAlpha = 0.4;
constexpr double kRadius = 20.0;

EnergyFunctional constant_functional(const Grid& grid, NonlinearityModel model = NonlinearityModel::odd_power) {
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.size());
    auto form = std::make_shared<const QuadraticForm>(assemble_form(grid, kAlpha, ones));
    return {form, {model, 4.0}, ones};
}

void assembly(benchmark::State& state) {
    const Grid grid = build_grid(kRadius, static_cast<int>(state.range(0)));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.size());
    for (auto _ : state) benchmark::DoNotOptimize(assemble_form(grid, kAlpha, ones));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(assembly)->Arg(201)->Arg(401)->Arg(801)->Unit(benchmark::kMillisecond)->Complexity();

void energy_and_gradient(benchmark::State& state) {
    const Grid grid = build_grid(kRadius, static_cast<int>(state.range(0)));
    const EnergyFunctional J = constant_functional(grid);
    const State u = seed_nodal(grid, -1.0, 1.0, 0.5, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(J.energy(u));
        benchmark::DoNotOptimize(J.gradient(u));
    }
}
BENCHMARK(energy_and_gradient)->Arg(401)->Arg(801)->Unit(benchmark::kMicrosecond);

// Homogeneous model takes the closed-form ray path, the log model does not.
void projection(benchmark::State& state) {
    const Grid grid = build_grid(kRadius, 801);
    const auto model = state.range(0) == 0 ? NonlinearityModel::odd_power : NonlinearityModel::log_model;
    const EnergyFunctional J = constant_functional(grid, model);
    const State u = seed_nodal(grid, -1.0, 1.0, 0.5, 1.0);
    for (auto _ : state) {
        if (model == NonlinearityModel::odd_power) {
            benchmark::DoNotOptimize(nodal_projection(J, u));
        } else {
            benchmark::DoNotOptimize(scalar_projection(J, u));
        }
    }
    state.SetLabel(std::string(to_string(model)));
}
BENCHMARK(projection)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void ground_solve(benchmark::State& state) {
    const Grid grid = build_grid(kRadius, static_cast<int>(state.range(0)));
    const EnergyFunctional J = constant_functional(grid);
    const Lobe lobe{0.0, 1.5, 1.0};
    const State seed = seed_lobes(grid, std::span(&lobe, 1));
    for (auto _ : state) benchmark::DoNotOptimize(solve_ground(J, seed));
}
BENCHMARK(ground_solve)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
