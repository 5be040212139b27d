#include "fracnodal/coefficients.hpp"

#include "fracnodal/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

namespace fracnodal {

namespace {

double bump_half_width(int n) { return std::ldexp(1.0, -n); }

// ∫ hat_i · bump_n over Ω; both factors are piecewise linear so two Gauss points per piece are exact.
double hat_bump_integral(const Grid& grid, Eigen::Index i, int n) {
    const double h = grid.spacing;
    const double lo = std::max(i > 0 ? grid[i] - h : grid[i], n - bump_half_width(n));
    const double hi = std::min(i + 1 < grid.size() ? grid[i] + h : grid[i], n + bump_half_width(n));
    if (!(hi > lo)) return 0.0;
    std::vector<double> cuts = {lo, hi};
    for (const double c : {grid[i], static_cast<double>(n)}) {
        if (c > lo && c < hi) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    const double g = 0.5 / std::sqrt(3.0);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        const double len = cuts[k + 1] - cuts[k];
        for (const double z : {mid - g * len, mid + g * len}) {
            const double hat = std::max(0.0, 1.0 - std::abs(z - grid[i]) / h);
            const double bump = std::max(0.0, 1.0 - std::abs(z - n) / bump_half_width(n));
            total += 0.5 * len * hat * bump;
        }
    }
    return total;
}

}  // namespace

std::string_view to_string(PotentialPreset preset) {
    switch (preset) {
        case PotentialPreset::constant: return "constant";
        case PotentialPreset::log_tail: return "log_tail";
        case PotentialPreset::log_tail_with_bumps: return "log_tail_with_bumps";
        case PotentialPreset::from_file: return "from_file";
    }
    return "unknown";
}

PotentialPreset parse_preset(std::string_view name) {
    if (name == "constant") return PotentialPreset::constant;
    if (name == "log_tail") return PotentialPreset::log_tail;
    if (name == "log_tail_with_bumps") return PotentialPreset::log_tail_with_bumps;
    if (name == "from_file") return PotentialPreset::from_file;
    throw ParameterError("unknown potential preset '" + std::string(name) + "'");
}

double log_tail(double x) { return 1.0 / std::log(2.0 + std::abs(x)); }

double bump_profile(double x) {
    const long n = std::lround(x);
    if (n < 1) return 0.0;
    const double w = bump_half_width(static_cast<int>(n));
    return std::max(0.0, 1.0 - std::abs(x - static_cast<double>(n)) / w);
}

Eigen::VectorXd bump_family_averages(const Grid& grid) {
    const Eigen::VectorXd mass = grid.nodal_mass();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(grid.size());
    const int last_bump = static_cast<int>(std::ceil(grid.radius));
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const int nearest = static_cast<int>(std::lround(grid[i]));
        for (int n = std::max(1, nearest - 1); n <= std::min(last_bump, nearest + 1); ++n) {
            out[i] += hat_bump_integral(grid, i, n);
        }
        out[i] /= mass[i];
    }
    return out;
}

CoefficientPair make_coefficients(const Grid& grid, const CoefficientOptions& options) {
    const Eigen::Index n = grid.size();
    CoefficientPair pair;
    switch (options.preset) {
        case PotentialPreset::constant:
            if (!(options.constant_value > 0.0)) {
                throw HypothesisViolation("constant coefficient must be positive");
            }
            pair.v = Eigen::VectorXd::Constant(n, options.constant_value);
            pair.k = pair.v;
            return pair;
        case PotentialPreset::from_file: {
            std::ifstream in(options.file);
            if (!in) throw ParameterError("cannot open coefficient file '" + options.file + "'");
            return read_coefficients_csv(in, grid);
        }
        case PotentialPreset::log_tail:
        case PotentialPreset::log_tail_with_bumps:
            break;
    }
    Eigen::VectorXd tail(n);
    for (Eigen::Index i = 0; i < n; ++i) tail[i] = log_tail(grid[i]);
    const Eigen::VectorXd bumps = options.preset == PotentialPreset::log_tail_with_bumps
                                      ? bump_family_averages(grid)
                                      : Eigen::VectorXd::Zero(n);
    pair.k = bumps + tail;
    if (options.h4_variant) {
        const double critical = critical_exponent(grid.dimension, options.alpha);
        if (!(options.pair_m > 2.0 && options.pair_m < critical)) {
            throw ParameterError("pair_m must lie in (2, 2*_alpha)");
        }
        const double exponent = (critical - 2.0) / (critical - options.pair_m);
        pair.v = bumps + tail.array().pow(exponent).matrix();
    } else {
        pair.v = pair.k;
    }
    return pair;
}

CoefficientPair read_coefficients_csv(std::istream& in, const Grid& grid) {
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("coefficient file is empty");
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
    if (line != "x,V,K") throw ParameterError("coefficient file must start with the header x,V,K");
    std::vector<double> xs, vs, ks;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double x = 0, v = 0, k = 0;
        if (!(fields >> x >> v >> k)) {
            throw ParameterError("coefficient file row " + std::to_string(row) + " is not x,V,K");
        }
        if (!xs.empty() && !(x > xs.back())) {
            throw ParameterError("coefficient file x column must be strictly increasing");
        }
        xs.push_back(x);
        vs.push_back(v);
        ks.push_back(k);
    }
    if (xs.size() < 2 || xs.front() > -grid.radius || xs.back() < grid.radius) {
        throw ParameterError("coefficient file must cover [-R, R]");
    }
    CoefficientPair pair{Eigen::VectorXd(grid.size()), Eigen::VectorXd(grid.size())};
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t hi = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - xs.begin(), 1), xs.size() - 1);
        const std::size_t lo = hi - 1;
        const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
        pair.v[i] = (1.0 - w) * vs[lo] + w * vs[hi];
        pair.k[i] = (1.0 - w) * ks[lo] + w * ks[hi];
    }
    return pair;
}

}  // namespace fracnodal
