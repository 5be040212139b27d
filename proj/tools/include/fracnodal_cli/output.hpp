#pragma once

#include <fracnodal/grid.hpp>
#include <fracnodal/hypotheses.hpp>
#include <fracnodal/solver.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <vector>

namespace fracnodal::cli {

nlohmann::json to_json(const SolveReport& report);
nlohmann::json to_json(const NodalScales& scales);
nlohmann::json to_json(const HypothesisReport& report);

/// `x,u` with header, 17 significant digits.
void write_solution_csv(const Grid& grid, const State& u, std::ostream& out);
/// `iteration,energy`
void write_trace_csv(const std::vector<double>& trace, std::ostream& out);

void write_json(const nlohmann::json& value, const std::filesystem::path& path);

/// Opens path for writing; throws std::runtime_error naming the file on failure.
std::ofstream open_output(const std::filesystem::path& path);

/// Plain-text table of the verdicts.
void print_table(const HypothesisReport& report, std::ostream& out);

}  // namespace fracnodal::cli
