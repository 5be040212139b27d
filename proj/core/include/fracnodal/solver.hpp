#pragma once

#include "fracnodal/functional.hpp"
#include "fracnodal/nehari.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracnodal {

struct SolverOptions {
    /// Stop when the dual norm of J′ (the X-norm of the Sobolev gradient) is at most tol.
    double tol = 1e-6;
    int max_iter = 20000;
    /// Parts with X-norm below beta count as collapsed.
    double beta = 1e-6;
    double armijo = 1e-4;
    double initial_step = 1.0;
    int max_backtracks = 40;
    /// Relative bracket width for the scalar projection.
    double scalar_rel_width = 1e-12;
    ProjectionOptions projection{1e-12, 500, 24};
};

enum class SolveStatus {
    converged,
    max_iterations,
    line_search_failed,
    nodal_collapse,
};

std::string_view to_string(SolveStatus status);

struct SolveReport {
    State final_state;
    double energy = 0.0;
    double residual = 0.0;
    /// Nodal runs only: projection of the final state, ≈ (1, 1) on success.
    std::optional<NodalScales> scales_at_end;
    int iterations = 0;
    /// Energy after each projection + step cycle, starting with the projected seed.
    std::vector<double> energy_trace;
    bool sign_change = false;
    SolveStatus status = SolveStatus::max_iterations;
    std::string message;
    /// Filled in by callers that run the degree certificate.
    std::optional<int> degree_certificate;

    [[nodiscard]] bool converged() const noexcept { return status == SolveStatus::converged; }
};

struct Lobe {
    double center;
    double width;
    double amplitude;
};

/// Σ amplitude · exp(-(x - center)² / width²). Throws ParameterError for centres outside (-R, R),
/// non-positive widths or an identically zero seed.
State seed_lobes(const Grid& grid, std::span<const Lobe> lobes);

/// amplitude · [exp(-(x - x₊)²/width²) − exp(-(x - x₋)²/width²)]
State seed_nodal(const Grid& grid, double x_minus, double x_plus, double width, double amplitude);

/// True if u has at least one strictly positive and one strictly negative entry.
bool changes_sign(const State& u);

/// Minimises J over the Nehari set: project onto the ray maximum, take a Sobolev-gradient step with
/// Armijo backtracking on the projected energy, repeat until the residual is below tol.
SolveReport solve_ground(const EnergyFunctional& functional, const State& seed, const SolverOptions& options = {});

/// Same scheme on the nodal set, with the two-parameter projection (t₊, s₋) in place of t_u.
/// Throws ParameterError if the seed does not change sign.
SolveReport solve_nodal(const EnergyFunctional& functional, const State& seed, const SolverOptions& options = {});

struct MultistartEntry {
    std::size_t seed_index;
    SolveReport report;
};

/// Runs solve_nodal on sign-changing seeds and solve_ground on the others, then keeps one converged
/// representative per critical point. Two results coincide when their energies agree to 1e-4
/// relative and min(‖u−v‖∞, ‖u+v‖∞) / max(‖u‖∞, ‖v‖∞) ≤ 1e-2. Requires an odd nonlinearity.
std::vector<MultistartEntry> multistart(const EnergyFunctional& functional, std::span<const State> seeds,
                                        const SolverOptions& options = {});

/// Normalised sup distance between u and v up to the sign flip u ↦ −u.
double orbit_distance(const State& u, const State& v);

}  // namespace fracnodal
