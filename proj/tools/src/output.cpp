#include "fracnodal_cli/output.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace fracnodal::cli {

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

nlohmann::json to_json(const NodalScales& scales) {
    return {{"t_plus", scales.t_plus},     {"s_minus", scales.s_minus},   {"residual", scales.residual},
            {"iterations", scales.iterations}, {"converged", scales.converged}, {"method", scales.method}};
}

nlohmann::json to_json(const SolveReport& report) {
    nlohmann::json j;
    j["energy"] = report.energy;
    j["residual"] = report.residual;
    j["iterations"] = report.iterations;
    j["scales"] = report.scales_at_end ? to_json(*report.scales_at_end) : nlohmann::json(nullptr);
    j["sign_change"] = report.sign_change;
    j["degree_certificate"] = report.degree_certificate ? nlohmann::json(*report.degree_certificate)
                                                        : nlohmann::json(nullptr);
    j["status"] = std::string(to_string(report.status));
    j["message"] = report.message;
    return j;
}

nlohmann::json to_json(const HypothesisReport& report) {
    nlohmann::json conditions = nlohmann::json::array();
    for (const auto& c : report.conditions) {
        nlohmann::json witnesses = nlohmann::json::array();
        for (const auto& w : c.witnesses) {
            witnesses.push_back({{"location", w.location}, {"value", w.value}, {"note", w.note}});
        }
        conditions.push_back({{"condition", c.condition},
                              {"verdict", std::string(to_string(c.verdict))},
                              {"trend", c.trend},
                              {"detail", c.detail},
                              {"witnesses", witnesses}});
    }
    return {{"conditions", conditions}, {"claimed", report.claimed}, {"observed", report.observed}};
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_solution_csv(const Grid& grid, const State& u, std::ostream& out) {
    out << "x,u\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) out << g17(grid[i]) << ',' << g17(u[i]) << '\n';
}

void write_trace_csv(const std::vector<double>& trace, std::ostream& out) {
    out << "iteration,energy\n";
    for (std::size_t k = 0; k < trace.size(); ++k) out << k << ',' << g17(trace[k]) << '\n';
}

void write_json(const nlohmann::json& value, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << value.dump(2) << '\n';
}

void print_table(const HypothesisReport& report, std::ostream& out) {
    out << std::left << std::setw(10) << "condition" << std::setw(17) << "verdict" << "detail\n";
    for (const auto& c : report.conditions) {
        out << std::setw(10) << c.condition << std::setw(17)
            << (std::string(to_string(c.verdict)) + (c.trend ? " (trend)" : "")) << c.detail << '\n';
        for (const auto& w : c.witnesses) {
            out << std::setw(27) << "" << "at " << g17(w.location) << ": " << g17(w.value) << "  " << w.note << '\n';
        }
    }
    out << "claimed " << report.claimed << ", observed " << report.observed << '\n';
}

}  // namespace fracnodal::cli
