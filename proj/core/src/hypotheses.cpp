#include "fracnodal/hypotheses.hpp"

#include "fracnodal/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fracnodal {

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::pass: return "pass";
        case Verdict::flagged: return "flagged";
        case Verdict::not_checkable: return "not_checkable";
    }
    return "not_checkable";
}

const ConditionResult* HypothesisReport::find(std::string_view condition) const {
    for (const auto& c : conditions) {
        if (c.condition == condition) return &c;
    }
    return nullptr;
}

namespace {

constexpr double kRelStrict = 1e-9;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Tail half of the bins that actually contain samples.
std::vector<RadialBin> tail(const std::vector<RadialBin>& bins) {
    return {bins.begin() + static_cast<std::ptrdiff_t>(bins.size() / 2), bins.end()};
}

bool growing(const std::vector<RadialBin>& bins) {
    const auto t = tail(bins);
    if (t.size() < 2) return false;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i].max > t[i - 1].max * (1.0 + kRelStrict))) return false;
    }
    return true;
}

bool decaying(const std::vector<RadialBin>& bins) {
    const auto t = tail(bins);
    if (t.size() < 2) return false;
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i].max > t[i - 1].max * (1.0 + 1e-12)) return false;
        if (!(t[i].median < t[i - 1].median * (1.0 - kRelStrict))) return false;
    }
    return true;
}

Witness outer_witness(const std::vector<RadialBin>& bins, std::string note) {
    const auto& b = bins.back();
    return {b.argmax, b.max, std::move(note)};
}

std::string describe(const std::vector<RadialBin>& bins) {
    std::ostringstream os;
    os << "shell maxima:";
    for (const auto& b : tail(bins)) os << ' ' << fmt(b.max);
    os << "; medians:";
    for (const auto& b : tail(bins)) os << ' ' << fmt(b.median);
    return os.str();
}

void require_sizes(const Grid& grid, const Eigen::VectorXd& a) {
    if (a.size() != grid.size()) throw ParameterError("coefficient size does not match the grid");
}

}  // namespace

std::vector<RadialBin> radial_bins(const Grid& grid, const Eigen::VectorXd& values, int bins) {
    require_sizes(grid, values);
    if (bins < 2) throw ParameterError("radial_bins: need at least two shells");
    const double r_min = grid.radius / 100.0;
    const double ratio = std::pow(100.0, 1.0 / bins);
    std::vector<RadialBin> out;
    for (int b = 0; b < bins; ++b) {
        const double lo = r_min * std::pow(ratio, b);
        const double hi = b + 1 == bins ? grid.radius : r_min * std::pow(ratio, b + 1);
        std::vector<double> sample;
        double best = -HUGE_VAL;
        double where = 0.0;
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            const double r = std::abs(grid[i]);
            const bool inside = r >= lo && (r < hi || (b + 1 == bins && r <= hi));
            if (!inside) continue;
            sample.push_back(values[i]);
            if (values[i] > best) {
                best = values[i];
                where = grid[i];
            }
        }
        if (sample.empty()) continue;
        const auto mid = sample.begin() + static_cast<std::ptrdiff_t>(sample.size() / 2);
        std::nth_element(sample.begin(), mid, sample.end());
        out.push_back({lo, hi, best, *mid, where});
    }
    return out;
}

ConditionResult check_h1(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k) {
    require_sizes(grid, v);
    require_sizes(grid, k);
    ConditionResult r{"h1", Verdict::pass, false, "", {}};
    for (Eigen::Index i = 0; i < grid.size() && r.witnesses.size() < 5; ++i) {
        if (!(v[i] > 0.0) || !std::isfinite(v[i])) r.witnesses.push_back({grid[i], v[i], "V not positive"});
        if (!(k[i] > 0.0) || !std::isfinite(k[i])) r.witnesses.push_back({grid[i], k[i], "K not positive"});
    }
    if (!r.witnesses.empty()) {
        r.verdict = Verdict::flagged;
        r.detail = "V or K is not positive on the grid";
        return r;
    }
    const auto bins = radial_bins(grid, k);
    if (growing(bins)) {
        r.verdict = Verdict::flagged;
        r.trend = true;
        r.detail = "K grows across the outer shells (" + describe(bins) + ")";
        r.witnesses.push_back(outer_witness(bins, "largest K in the outer shell"));
        return r;
    }
    r.detail = "V, K > 0 at all nodes; K shows no growth";
    return r;
}

std::vector<double> default_h2_radii(const Grid& grid, double window_measure) {
    std::vector<double> radii;
    const double last = grid.radius - window_measure;
    if (!(last > 0.0)) throw ParameterError("h2 window " + fmt(window_measure) + " does not fit in the domain");
    for (int j = 0; j <= 8; ++j) radii.push_back(last * j / 8.0);
    return radii;
}

ConditionResult check_h2(const Grid& grid, const Eigen::VectorXd& k, double window_measure,
                         const std::vector<double>& radii) {
    require_sizes(grid, k);
    if (!(window_measure > 0.0)) throw ParameterError("h2 window measure must be positive");
    if (radii.size() < 2) throw ParameterError("h2 needs at least two radii");
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (radii[j] < 0.0 || radii[j] + window_measure > grid.radius + 1e-12) {
            throw ParameterError("h2 radius " + fmt(radii[j]) + " plus window " + fmt(window_measure) +
                                 " exceeds R = " + fmt(grid.radius));
        }
        if (j > 0 && !(radii[j] > radii[j - 1])) throw ParameterError("h2 radii must be increasing");
    }
    const Eigen::VectorXd mass = grid.nodal_mass();
    const Eigen::Index n = grid.size();
    // prefix[i] = Σ_{j<i} K_j m_j
    std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
    for (Eigen::Index i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + k[i] * mass[i];
    const double h = grid.spacing;
    const auto span_nodes = static_cast<Eigen::Index>(std::floor(window_measure / h + 1e-9));
    auto window_sum = [&](Eigen::Index first) {
        // Trapezoidal in the window: the two end nodes count half.
        const Eigen::Index last = std::min(n - 1, first + span_nodes);
        return prefix[last + 1] - prefix[first] - 0.5 * (k[first] * mass[first] + k[last] * mass[last]);
    };

    std::vector<double> sup(radii.size(), 0.0);
    std::vector<double> where(radii.size(), 0.0);
    for (std::size_t j = 0; j < radii.size(); ++j) {
        for (Eigen::Index i = 0; i + span_nodes < n; ++i) {
            const double lo = grid[i];
            const double hi = grid[i + span_nodes];
            const bool right = lo >= radii[j] - 1e-12;
            const bool left = hi <= -radii[j] + 1e-12;
            if (!right && !left) continue;
            const double s = window_sum(i);
            if (s > sup[j]) {
                sup[j] = s;
                where[j] = lo;
            }
        }
    }

    ConditionResult r{"h2", Verdict::pass, true, "", {}};
    std::ostringstream os;
    os << "sup of window integrals by radius:";
    for (std::size_t j = 0; j < radii.size(); ++j) os << " r=" << fmt(radii[j]) << ":" << fmt(sup[j]);
    if (sup.back() == 0.0) {
        r.trend = false;
        r.detail = "K vanishes outside a bounded set; " + os.str();
        return r;
    }
    for (std::size_t j = 1; j < radii.size(); ++j) {
        if (!(sup[j] < sup[j - 1] * (1.0 - 1e-6))) {
            r.verdict = Verdict::flagged;
            r.detail = "window integrals of K do not decrease with the radius; " + os.str();
            r.witnesses.push_back({where[j], sup[j], "window start, radius " + fmt(radii[j])});
            return r;
        }
    }
    r.detail = "window integrals of K decrease with the radius; " + os.str();
    return r;
}

ConditionResult check_h3(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k) {
    require_sizes(grid, v);
    require_sizes(grid, k);
    ConditionResult r{"h3", Verdict::pass, true, "", {}};
    if ((v.array() <= 0.0).any()) {
        r.verdict = Verdict::flagged;
        r.trend = false;
        r.detail = "V is not positive, K/V undefined";
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
            if (v[i] <= 0.0) {
                r.witnesses.push_back({grid[i], v[i], "V not positive"});
                break;
            }
        }
        return r;
    }
    const Eigen::VectorXd ratio = k.cwiseQuotient(v);
    const auto bins = radial_bins(grid, ratio);
    if (growing(bins)) {
        r.verdict = Verdict::flagged;
        r.detail = "K/V grows across the outer shells (" + describe(bins) + ")";
        r.witnesses.push_back(outer_witness(bins, "largest K/V in the outer shell"));
        return r;
    }
    r.detail = "K/V shows no growth, max " + fmt(ratio.maxCoeff()) + " (" + describe(bins) + ")";
    return r;
}

ConditionResult check_h4(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k, double m,
                         double alpha, int dimension) {
    require_sizes(grid, v);
    require_sizes(grid, k);
    const double crit = critical_exponent(dimension, alpha);
    if (!(m > 2.0 && m < crit)) {
        throw ParameterError("h4 exponent m = " + fmt(m) + " outside (2, " + fmt(crit) + ")");
    }
    ConditionResult r{"h4", Verdict::pass, true, "", {}};
    if ((v.array() <= 0.0).any()) {
        r.verdict = Verdict::flagged;
        r.trend = false;
        r.detail = "V is not positive, the weighted ratio is undefined";
        return r;
    }
    const double power = (crit - m) / (crit - 2.0);
    const Eigen::VectorXd ratio = k.array() / v.array().pow(power);
    const auto bins = radial_bins(grid, ratio);
    const std::string label = "K/V^" + fmt(power) + " with m = " + fmt(m);
    if (!decaying(bins)) {
        r.verdict = Verdict::flagged;
        r.detail = label + " does not decay across the outer shells (" + describe(bins) + ")";
        r.witnesses.push_back(outer_witness(bins, "largest ratio in the outer shell"));
        return r;
    }
    r.detail = label + " decays across the outer shells (" + describe(bins) + ")";
    return r;
}

SampledNonlinearity sampled(const NonlinearityParams& params) {
    return {[params](double t) { return f_eval(params, t); }, [params](double t) { return F_eval(params, t); }};
}

std::vector<double> log_spaced_grid(double t_min, double t_max, int per_decade) {
    if (!(t_min > 0.0) || !(t_max > t_min) || per_decade < 1) {
        throw ParameterError("log_spaced_grid: need 0 < t_min < t_max and per_decade >= 1");
    }
    std::vector<double> pos;
    const double k0 = std::ceil(std::log10(t_min) * per_decade - 1e-9);
    const double k1 = std::floor(std::log10(t_max) * per_decade + 1e-9);
    for (double k = k0; k <= k1; k += 1.0) pos.push_back(std::pow(10.0, k / per_decade));
    std::vector<double> out;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

namespace {

// One sign half of the sample grid, ordered by increasing |t|.
struct Half {
    std::string name;
    std::vector<double> t;
    bool degenerate = false;
};

std::vector<Half> halves(const SampledNonlinearity& nl, std::span<const double> grid) {
    Half pos{"t > 0", {}, false};
    Half neg{"t < 0", {}, false};
    for (const double t : grid) {
        if (t > 0.0) pos.t.push_back(t);
        if (t < 0.0) neg.t.push_back(t);
    }
    std::sort(pos.t.begin(), pos.t.end());
    std::sort(neg.t.begin(), neg.t.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    std::vector<Half> out;
    for (Half* h : {&pos, &neg}) {
        if (h->t.size() < 4) continue;
        h->degenerate = std::all_of(h->t.begin(), h->t.end(), [&](double t) { return nl.f(t) == 0.0; });
        out.push_back(std::move(*h));
    }
    if (out.empty()) throw ParameterError("check_f: the sample grid needs at least four points on one side of 0");
    return out;
}

std::vector<double> select(const Half& h, bool smallest) {
    const double lo = std::abs(h.t.front());
    const double hi = std::abs(h.t.back());
    std::vector<double> out;
    for (const double t : h.t) {
        if (smallest ? std::abs(t) <= 100.0 * lo : std::abs(t) >= hi / 100.0) out.push_back(t);
    }
    return out;
}

// Index of the first step where q fails to strictly increase (or strictly decrease); -1 if none.
template <class Q>
std::ptrdiff_t first_break(const std::vector<double>& ts, Q q, bool increasing) {
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double a = q(ts[i - 1]);
        const double b = q(ts[i]);
        const bool ok = increasing ? b > a : b < a;
        if (!ok) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

struct Judge {
    ConditionResult result;
    std::vector<std::string> notes;
    int judged = 0;

    void flag(double t, double value, const std::string& what) {
        result.verdict = Verdict::flagged;
        result.witnesses.push_back({t, value, what});
    }
    void finish(const std::string& ok_text) {
        if (judged == 0 && result.verdict == Verdict::pass) {
            result.verdict = Verdict::flagged;
            notes.push_back("f vanishes on every sampled half");
        }
        std::string d = result.verdict == Verdict::pass ? ok_text : "violated on samples";
        for (const auto& n : notes) d += "; " + n;
        result.detail = d;
    }
};

}  // namespace

std::vector<ConditionResult> check_f(const SampledNonlinearity& nl, GrowthMode mode, double m, double alpha,
                                     int dimension, std::span<const double> t_grid) {
    const double crit = critical_exponent(dimension, alpha);
    const auto hs = halves(nl, t_grid);
    std::vector<ConditionResult> out;
    auto abs_ratio = [&](double power) { return [&nl, power](double t) { return std::abs(nl.f(t)) / std::pow(std::abs(t), power); }; };

    if (mode == GrowthMode::h3) {
        Judge j{{"f1", Verdict::pass, true, "", {}}, {}, 0};
        for (const auto& h : hs) {
            if (h.degenerate) {
                j.notes.push_back("f = 0 on " + h.name);
                ++j.judged;
                continue;
            }
            ++j.judged;
            const auto ts = select(h, true);
            const auto q = abs_ratio(1.0);
            const auto brk = first_break(ts, q, true);
            if (brk >= 0) j.flag(ts[brk], q(ts[brk]), "|f(t)/t| does not shrink as t -> 0 on " + h.name);
        }
        j.finish("|f(t)/t| decreases to 0 near the origin");
        out.push_back(std::move(j.result));
    } else {
        if (!(m > 2.0 && m < crit)) throw ParameterError("f~1 exponent m = " + fmt(m) + " outside (2, " + fmt(crit) + ")");
        Judge j{{"f1_tilde", Verdict::pass, true, "", {}}, {}, 0};
        for (const auto& h : hs) {
            ++j.judged;
            if (h.degenerate) {
                j.notes.push_back("f = 0 on " + h.name);
                continue;
            }
            const auto ts = select(h, true);
            const auto q = abs_ratio(m - 1.0);
            // Blow-up trend: q strictly decreasing in |t| across the whole window.
            if (first_break(ts, q, false) < 0 && q(ts.front()) > q(ts.back()) * (1.0 + kRelStrict)) {
                j.flag(ts.front(), q(ts.front()), "|f(t)|/|t|^(m-1) grows as t -> 0 on " + h.name);
            }
        }
        j.finish("|f(t)|/|t|^(m-1) stays bounded near the origin");
        out.push_back(std::move(j.result));
    }

    {
        Judge j{{"f2", Verdict::pass, true, "", {}}, {}, 0};
        for (const auto& h : hs) {
            ++j.judged;
            if (h.degenerate) {
                j.notes.push_back("f = 0 on " + h.name);
                continue;
            }
            const auto ts = select(h, false);
            const auto q = abs_ratio(crit - 1.0);
            const auto brk = first_break(ts, q, false);
            if (brk >= 0) j.flag(ts[brk], q(ts[brk]), "|f(t)|/|t|^(2*-1) does not decrease on " + h.name);
        }
        j.finish("|f(t)|/|t|^(2*-1) decreases for large |t|");
        out.push_back(std::move(j.result));
    }

    {
        Judge j{{"f3", Verdict::pass, true, "", {}}, {}, 0};
        for (const auto& h : hs) {
            if (h.degenerate) {
                j.notes.push_back("skipped " + h.name + " (f = 0 there)");
                continue;
            }
            ++j.judged;
            const auto ts = select(h, false);
            const auto q = [&nl](double t) { return nl.F(t) / (t * t); };
            const auto brk = first_break(ts, q, true);
            if (brk >= 0) j.flag(ts[brk], q(ts[brk]), "F(t)/t^2 does not increase on " + h.name);
        }
        j.finish("F(t)/t^2 increases for large |t|");
        out.push_back(std::move(j.result));
    }

    {
        Judge j{{"f4", Verdict::pass, false, "", {}}, {}, 0};
        double neg_max = -HUGE_VAL;
        double pos_min = HUGE_VAL;
        bool have_neg = false;
        bool have_pos = false;
        for (const auto& h : hs) {
            const auto q = [&nl](double t) { return nl.f(t) / std::abs(t); };
            for (const double t : h.t) {
                if (t < 0.0) neg_max = std::max(neg_max, q(t)), have_neg = true;
                else pos_min = std::min(pos_min, q(t)), have_pos = true;
            }
            if (h.degenerate) {
                j.notes.push_back("skipped strict check on " + h.name + " (f = 0 there)");
                continue;
            }
            ++j.judged;
            // Along increasing t: on t > 0 this is increasing |t|, on t < 0 decreasing |t|.
            std::vector<double> ts = h.t;
            std::sort(ts.begin(), ts.end());
            const auto brk = first_break(ts, q, true);
            if (brk >= 0) j.flag(ts[brk], q(ts[brk]), "f(t)/|t| is not strictly increasing on " + h.name);
        }
        if (have_neg && have_pos && neg_max > pos_min) j.flag(0.0, neg_max - pos_min, "f(t)/|t| jumps down across 0");
        j.finish("f(t)/|t| is strictly increasing on each nondegenerate half");
        out.push_back(std::move(j.result));
    }

    {
        Judge j{{"remark1", Verdict::pass, false, "", {}}, {}, 0};
        for (const auto& h : hs) {
            if (h.degenerate) {
                j.notes.push_back("skipped " + h.name + " (f = 0 there)");
                continue;
            }
            ++j.judged;
            const auto g = [&nl](double t) { return 0.5 * nl.f(t) * t - nl.F(t); };
            // Increasing in |t| on both halves.
            const auto brk = first_break(h.t, g, true);
            if (brk >= 0) j.flag(h.t[brk], g(h.t[brk]), "f(t)t/2 - F(t) is not monotone on " + h.name);
        }
        j.finish("f(t)t/2 - F(t) increases for t > 0 and decreases for t < 0");
        out.push_back(std::move(j.result));
    }
    return out;
}

HypothesisReport validate_hypotheses(const Grid& grid, const Eigen::VectorXd& v, const Eigen::VectorXd& k,
                                     const NonlinearityParams& params, double alpha, const ValidationOptions& options) {
    HypothesisReport report;
    report.claimed = options.mode == GrowthMode::h3 ? "h3" : "h4";
    report.conditions.push_back(check_h1(grid, v, k));
    const auto radii = options.radii.empty() ? default_h2_radii(grid, options.window_measure) : options.radii;
    report.conditions.push_back(check_h2(grid, k, options.window_measure, radii));
    report.conditions.push_back(check_h3(grid, v, k));
    const double m4 = options.h4_m > 0.0 ? options.h4_m : params.m;
    report.conditions.push_back(check_h4(grid, v, k, m4, alpha, grid.dimension));
    const auto t_grid = options.t_grid.empty() ? log_spaced_grid(1e-4, 1e4) : options.t_grid;
    for (auto& c : check_f(sampled(params), options.mode, params.m, alpha, grid.dimension, t_grid)) {
        report.conditions.push_back(std::move(c));
    }
    const bool h3 = report.find("h3")->verdict == Verdict::pass;
    const bool h4 = report.find("h4")->verdict == Verdict::pass;
    report.observed = h3 && h4 ? "h3+h4" : h3 ? "h3" : h4 ? "h4" : "none";
    return report;
}

}  // namespace fracnodal
