#include "fracnodal_cli/commands.hpp"

#include "fracnodal_cli/output.hpp"

#include <fracnodal/errors.hpp>
#include <fracnodal/quadratic_form.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <random>

namespace fracnodal::cli {

namespace {

struct Problem {
    Grid grid;
    CoefficientPair coefficients;
    std::shared_ptr<const QuadraticForm> form;
    std::unique_ptr<EnergyFunctional> functional;
};

Problem build_problem(const RunConfig& config) {
    Problem p;
    p.grid = build_grid(config.radius, config.n);
    CoefficientOptions coeff;
    coeff.preset = config.preset;
    coeff.constant_value = config.constant_value;
    coeff.h4_variant = config.h4_variant;
    coeff.pair_m = config.pair_m;
    coeff.alpha = config.alpha;
    coeff.file = config.coefficients_file;
    p.coefficients = make_coefficients(p.grid, coeff);
    p.form = std::make_shared<const QuadraticForm>(assemble_form(p.grid, config.alpha, p.coefficients.v));
    p.functional = std::make_unique<EnergyFunctional>(p.form, NonlinearityParams{config.model, config.m},
                                                      p.coefficients.k);
    return p;
}

SolverOptions solver_options(const RunConfig& config) {
    SolverOptions o;
    o.tol = config.solver_tol;
    o.max_iter = config.max_iter;
    o.beta = config.beta_config;
    o.projection.tol = config.projection_tol;
    return o;
}

State ground_seed(const RunConfig& config, const Grid& grid, double sign = 1.0) {
    const Lobe lobe{0.0, config.seed_width, sign * config.seed_amplitude};
    return seed_lobes(grid, std::span<const Lobe>(&lobe, 1));
}

State nodal_seed(const RunConfig& config, const Grid& grid, double sign = 1.0) {
    const double d = config.seed_separation / 2.0;
    return seed_nodal(grid, -d, d, config.seed_width, sign * config.seed_amplitude);
}

std::filesystem::path prepare_output(const RunConfig& config) {
    std::filesystem::create_directories(config.output_dir);
    return config.output_dir;
}

void write_solve_outputs(const Problem& p, const SolveReport& report, const std::filesystem::path& dir) {
    write_json(to_json(report), dir / "report.json");
    auto sol = open_output(dir / "solution.csv");
    write_solution_csv(p.grid, report.final_state, sol);
    auto trace = open_output(dir / "energy_trace.csv");
    write_trace_csv(report.energy_trace, trace);
}

void summarize(const char* what, const SolveReport& report, std::ostream& log) {
    log << what << ": " << to_string(report.status) << ", J = " << report.energy << ", residual = " << report.residual
        << ", iterations = " << report.iterations << '\n';
    if (!report.message.empty()) log << "  " << report.message << '\n';
}

int cmd_assemble(const RunConfig& config, std::ostream& log) {
    const Problem p = build_problem(config);
    const auto dir = prepare_output(config);
    {
        auto out = open_output(dir / "form.csv");
        write_form_csv(*p.form, out);
    }
    {
        auto out = open_output(dir / "weights.csv");
        write_weights_csv(*p.form, out);
    }
    const auto& a = p.form->interior;
    bool positive_definite = true;
    try {
        static_cast<void>(p.functional->solve_norm_operator(Eigen::VectorXd::Ones(p.grid.size())));
    } catch (const AssemblyError&) {
        positive_definite = false;
    }
    // Smallest projection scale seen over unit-norm one-signed bumps.
    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> centre(-config.radius / 2.0, config.radius / 2.0);
    std::uniform_real_distribution<double> width(0.25, 4.0);
    std::vector<State> directions;
    for (int k = 0; k < 16; ++k) {
        const Lobe lobe{centre(rng), width(rng), 1.0};
        directions.push_back(seed_lobes(p.grid, std::span(&lobe, 1)));
    }
    const ProjectionScaleRange scales = sample_projection_scales(*p.functional, directions);
    const nlohmann::json j = {{"n", p.grid.size()},
                              {"spacing", p.grid.spacing},
                              {"radius", p.grid.radius},
                              {"alpha", config.alpha},
                              {"diagonal_min", a.diagonal().minCoeff()},
                              {"diagonal_max", a.diagonal().maxCoeff()},
                              {"symmetry_defect", (a - a.transpose()).cwiseAbs().maxCoeff()},
                              {"offdiagonal_nonpositive", p.form->offdiagonal_nonpositive()},
                              {"exterior_weight_max", p.form->exterior_weights.maxCoeff()},
                              {"norm_operator_positive_definite", positive_definite},
                              {"projection_scale_min", scales.min},
                              {"projection_scale_max", scales.max},
                              {"projection_scale_samples", scales.samples}};
    write_json(j, dir / "report.json");
    log << "assembled " << p.grid.size() << " nodes, h = " << p.grid.spacing
        << (p.form->offdiagonal_nonpositive() ? "" : " (warning: positive off-diagonal entries, B <= 0 not guaranteed)")
        << '\n';
    return positive_definite ? exit_ok : exit_hypothesis_violation;
}

int cmd_validate(const RunConfig& config, std::ostream& log) {
    const Grid grid = build_grid(config.radius, config.n);
    CoefficientOptions coeff;
    coeff.preset = config.preset;
    coeff.constant_value = config.constant_value;
    coeff.h4_variant = config.h4_variant;
    coeff.pair_m = config.pair_m;
    coeff.alpha = config.alpha;
    coeff.file = config.coefficients_file;
    const CoefficientPair pair = make_coefficients(grid, coeff);
    ValidationOptions options;
    options.mode = config.hypothesis_mode;
    options.window_measure = config.h2_window;
    const HypothesisReport report =
        validate_hypotheses(grid, pair.v, pair.k, NonlinearityParams{config.model, config.m}, config.alpha, options);
    const auto dir = prepare_output(config);
    write_json(to_json(report), dir / "hypotheses.json");
    print_table(report, log);
    // Conditions the configuration does not rely on are reported but do not fail the run.
    const std::string skipped = config.hypothesis_mode == GrowthMode::h3 ? "h4" : "h3";
    const bool violated = std::any_of(report.conditions.begin(), report.conditions.end(), [&](const auto& c) {
        return c.condition != skipped && c.verdict == Verdict::flagged;
    });
    return violated ? exit_hypothesis_violation : exit_ok;
}

int cmd_solve_ground(const RunConfig& config, std::ostream& log) {
    const Problem p = build_problem(config);
    const SolveReport report = solve_ground(*p.functional, ground_seed(config, p.grid), solver_options(config));
    write_solve_outputs(p, report, prepare_output(config));
    summarize("ground", report, log);
    return report.converged() ? exit_ok : exit_not_converged;
}

std::optional<int> try_certificate(const Problem& p, const State& u, const RunConfig& config, std::ostream& log) {
    WindingOptions w;
    w.n_boundary = config.degree_samples;
    try {
        return certify_minimizer(*p.functional, u, config.degree_rect, w);
    } catch (const Error& e) {
        log << "degree certificate unavailable: " << e.what() << '\n';
        return std::nullopt;
    }
}

int cmd_solve_nodal(const RunConfig& config, std::ostream& log) {
    const Problem p = build_problem(config);
    SolveReport report = solve_nodal(*p.functional, nodal_seed(config, p.grid), solver_options(config));
    if (report.converged()) report.degree_certificate = try_certificate(p, report.final_state, config, log);
    write_solve_outputs(p, report, prepare_output(config));
    summarize("nodal", report, log);
    if (report.scales_at_end) {
        log << "  scales (t+, s-) = (" << report.scales_at_end->t_plus << ", " << report.scales_at_end->s_minus
            << ")\n";
    }
    return report.converged() ? exit_ok : exit_not_converged;
}

int cmd_multistart(const RunConfig& config, std::ostream& log) {
    const Problem p = build_problem(config);
    if (!p.functional->params().is_odd()) {
        throw ConfigError("model", "multistart needs the odd model odd_power");
    }
    std::vector<State> seeds = {ground_seed(config, p.grid, 1.0), ground_seed(config, p.grid, -1.0),
                                nodal_seed(config, p.grid, 1.0), nodal_seed(config, p.grid, -1.0)};
    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> centre(-config.radius / 4.0, config.radius / 4.0);
    std::uniform_real_distribution<double> amplitude(-1.0, 1.0);
    for (int k = 0; k < config.multistart_random; ++k) {
        const Lobe lobes[] = {{centre(rng), config.seed_width, amplitude(rng)},
                              {centre(rng), config.seed_width, amplitude(rng)}};
        seeds.push_back(seed_lobes(p.grid, lobes));
    }
    const auto found = multistart(*p.functional, seeds, solver_options(config));
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : found) {
        nlohmann::json j = to_json(e.report);
        j["seed_index"] = e.seed_index;
        j["kind"] = e.report.sign_change ? "nodal" : "one-signed";
        entries.push_back(j);
        log << "seed " << e.seed_index << ": " << (e.report.sign_change ? "nodal" : "one-signed")
            << ", J = " << e.report.energy << '\n';
    }
    const auto dir = prepare_output(config);
    write_json({{"seeds", seeds.size()}, {"distinct", entries}}, dir / "multistart.json");
    for (const auto& e : found) {
        auto out = open_output(dir / ("solution_" + std::to_string(e.seed_index) + ".csv"));
        write_solution_csv(p.grid, e.report.final_state, out);
    }
    log << found.size() << " distinct critical points (up to u -> -u) from " << seeds.size() << " seeds\n";
    return found.empty() ? exit_not_converged : exit_ok;
}

int cmd_degree_check(const RunConfig& config, std::ostream& log) {
    const Problem p = build_problem(config);
    const SolveReport report = solve_nodal(*p.functional, nodal_seed(config, p.grid), solver_options(config));
    summarize("nodal", report, log);
    if (!report.converged()) return exit_not_converged;
    WindingOptions w;
    w.n_boundary = config.degree_samples;
    const int degree = certify_minimizer(*p.functional, report.final_state, config.degree_rect, w);
    w.n_boundary *= 2;
    const int doubled = certify_minimizer(*p.functional, report.final_state, config.degree_rect, w);
    const auto& r = config.degree_rect;
    const nlohmann::json j = {{"degree_certificate", degree},
                              {"degree_doubled_samples", doubled},
                              {"rectangle", {r.t_lo, r.t_hi, r.s_lo, r.s_hi}},
                              {"boundary_samples", config.degree_samples},
                              {"energy", report.energy},
                              {"residual", report.residual}};
    write_json(j, prepare_output(config) / "degree.json");
    log << "degree on [" << r.t_lo << ", " << r.t_hi << "] x [" << r.s_lo << ", " << r.s_hi << "] = " << degree
        << " (doubled samples: " << doubled << ")\n";
    return exit_ok;
}

// String-valued keys are parsed after CLI11 so that errors carry the key name.
struct RawChoices {
    std::string model = "odd_power";
    std::string potential = "constant";
    std::string hypothesis_mode = "h3";
    std::vector<double> degree_rect;
    std::string output_dir;
};

void bind_options(CLI::App& app, RunConfig& c, RawChoices& raw) {
    app.add_option("--alpha", c.alpha, "fractional order alpha in (0, 1)");
    app.add_option("--N", c.dimension, "space dimension (only 1)");
    app.add_option("--R", c.radius, "truncation radius");
    app.add_option("--n", c.n, "number of grid nodes (odd)");
    app.add_option("--model", raw.model, "positive_power | log_model | odd_power");
    app.add_option("--m", c.m, "nonlinearity exponent in (2, 2*_alpha)");
    app.add_option("--potential", raw.potential, "constant | log_tail | log_tail_with_bumps | from_file");
    app.add_option("--constant_value", c.constant_value, "V = K value for the constant preset");
    app.add_option("--h4_variant", c.h4_variant, "use the (h4) example pair");
    app.add_option("--pair_m", c.pair_m, "exponent used to build the (h4) example pair");
    app.add_option("--coefficients_file", c.coefficients_file, "CSV with header x,V,K");
    app.add_option("--projection_tol", c.projection_tol, "Nehari projection tolerance, relative");
    app.add_option("--solver_tol", c.solver_tol, "stop when the dual norm of J' falls below this");
    app.add_option("--beta_config", c.beta_config, "parts with X-norm below this count as collapsed");
    app.add_option("--max_iter", c.max_iter, "descent iteration limit");
    app.add_option("--seed_width", c.seed_width, "Gaussian width of seed lobes");
    app.add_option("--seed_amplitude", c.seed_amplitude, "seed lobe amplitude");
    app.add_option("--seed_separation", c.seed_separation, "distance between the two nodal seed lobes");
    app.add_option("--multistart_random", c.multistart_random, "extra random two-lobe seeds");
    app.add_option("--rng_seed", c.rng_seed, "seed for random multistart lobes and sampled directions");
    app.add_option("--hypothesis_mode", raw.hypothesis_mode, "h3 | h4");
    app.add_option("--h2_window", c.h2_window, "window measure for (h2)");
    app.add_option("--degree_rect", raw.degree_rect, "t_lo t_hi s_lo s_hi")->expected(4);
    app.add_option("--degree_samples", c.degree_samples, "boundary samples for the winding number (>= 64)");
    app.add_option("--output_dir", raw.output_dir, "output directory (default: $FRACNODAL_OUTPUT_DIR or .)");
}

void apply_choices(RunConfig& c, const RawChoices& raw) {
    try {
        c.model = parse_model(raw.model);
    } catch (const ParameterError& e) {
        throw ConfigError("model", e.what());
    }
    try {
        c.preset = parse_preset(raw.potential);
    } catch (const ParameterError& e) {
        throw ConfigError("potential", e.what());
    }
    if (raw.hypothesis_mode == "h3") {
        c.hypothesis_mode = GrowthMode::h3;
    } else if (raw.hypothesis_mode == "h4") {
        c.hypothesis_mode = GrowthMode::h4;
    } else {
        throw ConfigError("hypothesis_mode", "expected h3 or h4, got '" + raw.hypothesis_mode + "'");
    }
    if (!raw.degree_rect.empty()) {
        c.degree_rect = {raw.degree_rect[0], raw.degree_rect[1], raw.degree_rect[2], raw.degree_rect[3]};
    }
    if (!raw.output_dir.empty()) {
        c.output_dir = raw.output_dir;
    } else if (const char* env = std::getenv("FRACNODAL_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        c.output_dir = env;
    }
}

}  // namespace

int run(std::string_view command, const RunConfig& config, std::ostream& log) {
    if (command == "assemble") return cmd_assemble(config, log);
    if (command == "validate") return cmd_validate(config, log);
    if (command == "solve-ground") return cmd_solve_ground(config, log);
    if (command == "solve-nodal") return cmd_solve_nodal(config, log);
    if (command == "multistart") return cmd_multistart(config, log);
    if (command == "degree-check") return cmd_degree_check(config, log);
    throw ConfigError("command", "unknown subcommand '" + std::string(command) + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
    CLI::App app{"Least-energy nodal solutions of the zero-mass fractional Schrodinger equation"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);
    RunConfig config;
    RawChoices raw;
    bind_options(app, config, raw);
    const char* const descriptions[] = {"assemble the quadratic form and write form.csv, weights.csv",
                                        "check hypotheses on V, K and f",
                                        "minimize J over the Nehari manifold",
                                        "minimize J over the nodal set",
                                        "solve from several seeds and list distinct critical points",
                                        "solve nodal, then compute the degree certificate"};
    for (std::size_t k = 0; k < kCommands.size(); ++k) {
        app.add_subcommand(std::string(kCommands[k]), descriptions[k])->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        log << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        apply_choices(config, raw);
        config.validate();
        return run(command, config, log);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const HypothesisViolation& e) {
        err << "hypothesis violation: " << e.what() << '\n';
        return exit_hypothesis_violation;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const DivergenceError& e) {
        err << "not converged: " << e.what() << '\n';
        return exit_not_converged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace fracnodal::cli
