#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fracfem/analysis.hpp"
#include "fracfem/random.hpp"

namespace fracfem {

enum class ReportFormat { csv, json };

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    int first_stage = 6;
    int last_stage = 9;
    CoefficientSpec coefficient = ConstantCoefficient{1.0};
    BoundaryConditions bc = BoundaryConditions::dirichlet_neumann;
    EndpointMode endpoint = EndpointMode::include;
    bool forcing_on = true;
    double forcing_ratio = 1.0 / 3.0;
    NormConvention convention = NormConvention::h1_full;
    int realizations = 1;
    int experiments = 1;
    std::uint64_t seed = 0;
};

struct MonteCarloRow {
    double l2_error = 0.0;
    double h1_error = 0.0;
};

/// Per-experiment norms of p̄_n − p̄ plus across-experiment summary. The
/// variance is the sample variance (n−1 denominator), matching the convention
/// of the reference experiments.
struct MonteCarloReport {
    int stage = 0;
    std::vector<MonteCarloRow> rows;
    MonteCarloRow average;
    MonteCarloRow variance;
};

using ExperimentReport = std::variant<std::vector<ConvergenceRow>, MonteCarloReport>;

inline void validate(const ExperimentConfig& config) {
    if (config.first_stage < 0 || config.last_stage < config.first_stage)
        throw std::invalid_argument("experiment: invalid stage range");
    if (config.realizations < 1 || config.experiments < 1)
        throw std::invalid_argument("experiment: realizations and experiments must be >= 1");
    if ((config.realizations > 1 || config.experiments > 1) && !is_random(config.coefficient))
        throw std::invalid_argument(
            "experiment: repeated realizations need a random coefficient");
    if (is_random(config.coefficient) && config.first_stage != config.last_stage)
        throw std::invalid_argument(
            "experiment: random coefficients run at a single stage, not a study range");
}

/// Monte-Carlo aggregation of Example-4.3 type: per experiment, average R
/// random-coefficient solutions nodally (in realization-index order, so the
/// result is schedule-independent) and compare against the deterministic
/// solve with the midpoint coefficient.
inline MonteCarloReport run_montecarlo(const ExperimentConfig& config) {
    validate(config);
    if (!is_random(config.coefficient))
        throw std::invalid_argument("run_montecarlo: needs a random coefficient");
    const auto& rc = std::get<RandomUniformCoefficient>(config.coefficient);
    const int stage = config.first_stage;
    const Microstructure micro = Microstructure::cantor_extremes(stage);
    const Mesh1D mesh = build_mesh(stage);
    const PointFunction f = config.forcing_on
                                ? make_forcing_table(micro, stage, config.forcing_ratio)
                                : PointFunction::zero(micro, stage);

    const CoefficientSpec midpoint = ConstantCoefficient{0.5 * (rc.lo + rc.hi)};
    const PiecewiseLinearFn reference = solve_with_tables(
        mesh, micro, stage, make_beta_table(midpoint, micro, stage), {}, f, config.bc,
        config.endpoint);

    MonteCarloReport report;
    report.stage = stage;
    const std::uint64_t R = static_cast<std::uint64_t>(config.realizations);
    for (int e = 0; e < config.experiments; ++e) {
        std::vector<double> averaged(mesh.size(), 0.0);
        for (int r = 0; r < config.realizations; ++r) {
            const std::uint64_t realization_index = static_cast<std::uint64_t>(e) * R +
                                                    static_cast<std::uint64_t>(r);
            const PointFunction beta =
                sample_random_beta(micro, stage, rc.lo, rc.hi, config.seed, realization_index);
            const PiecewiseLinearFn p =
                solve_with_tables(mesh, micro, stage, beta, {}, f, config.bc, config.endpoint);
            // incremental mean in index order: schedule-independent, and exact
            // when every realization coincides (degenerate lo = hi interval)
            for (std::size_t i = 0; i < averaged.size(); ++i)
                averaged[i] += (p.values[i] - averaged[i]) / (r + 1);
        }
        std::vector<double> diff(mesh.size());
        for (std::size_t i = 0; i < diff.size(); ++i)
            diff[i] = averaged[i] - reference.values[i];
        const NormTriple t = norms(PiecewiseLinearFn(mesh, std::move(diff)));
        report.rows.push_back({t.l2, h1_of(t, config.convention)});
    }

    const std::size_t n = report.rows.size();
    for (const MonteCarloRow& row : report.rows) {
        report.average.l2_error += row.l2_error / n;
        report.average.h1_error += row.h1_error / n;
    }
    if (n > 1) {
        for (const MonteCarloRow& row : report.rows) {
            const double dl = row.l2_error - report.average.l2_error;
            const double dh = row.h1_error - report.average.h1_error;
            report.variance.l2_error += dl * dl / (n - 1);
            report.variance.h1_error += dh * dh / (n - 1);
        }
    }
    return report;
}

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    if (is_random(config.coefficient)) return run_montecarlo(config);
    StudyConfig sc;
    sc.coefficient = config.coefficient;
    sc.bc = config.bc;
    sc.endpoint = config.endpoint;
    sc.forcing_on = config.forcing_on;
    sc.forcing_ratio = config.forcing_ratio;
    sc.convention = config.convention;
    return convergence_study(config.first_stage, config.last_stage, sc);
}

namespace detail {

inline std::string fmt(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    return out;
}

inline const char* name_of(BoundaryConditions bc) {
    return bc == BoundaryConditions::dirichlet_neumann ? "dirichlet_neumann"
                                                       : "dirichlet_dirichlet";
}
inline const char* name_of(EndpointMode m) {
    return m == EndpointMode::include ? "include" : "exclude";
}
inline const char* name_of(NormConvention c) {
    return c == NormConvention::h1_full ? "h1_full" : "h1_semi";
}

inline nlohmann::json metadata(const ExperimentConfig& config) {
    return nlohmann::json{{"coefficient", to_string(config.coefficient)},
                          {"bc", name_of(config.bc)},
                          {"endpoint_mode", name_of(config.endpoint)},
                          {"forcing_on", config.forcing_on},
                          {"forcing_ratio", config.forcing_ratio},
                          {"norm_convention", name_of(config.convention)},
                          {"seed", config.seed},
                          {"realizations", config.realizations},
                          {"experiments", config.experiments}};
}

}  // namespace detail

inline void write_study_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
    out << "stage,nodes,l2_norm,h1_norm,l2_diff,h1_diff\n";
    for (const ConvergenceRow& r : rows) {
        out << r.stage << "," << r.node_count << "," << detail::fmt(r.l2_norm, 15) << ","
            << detail::fmt(r.h1_norm, 15) << ",";
        if (r.l2_diff) out << detail::fmt(*r.l2_diff, 15);
        out << ",";
        if (r.h1_diff) out << detail::fmt(*r.h1_diff, 15);
        out << "\n";
    }
}

inline void write_montecarlo_csv(const MonteCarloReport& report, std::ostream& out) {
    out << "experiment,l2_error,h1_error\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        out << (i + 1) << "," << detail::fmt(report.rows[i].l2_error, 15) << ","
            << detail::fmt(report.rows[i].h1_error, 15) << "\n";
    out << "average," << detail::fmt(report.average.l2_error, 15) << ","
        << detail::fmt(report.average.h1_error, 15) << "\n";
    out << "variance," << detail::fmt(report.variance.l2_error, 15) << ","
        << detail::fmt(report.variance.h1_error, 15) << "\n";
}

inline nlohmann::json to_json(const std::vector<ConvergenceRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ConvergenceRow& r : rows) {
        nlohmann::json row{{"stage", r.stage},
                           {"nodes", r.node_count},
                           {"l2_norm", r.l2_norm},
                           {"h1_norm", r.h1_norm}};
        if (r.l2_diff) row["l2_diff"] = *r.l2_diff;
        if (r.h1_diff) row["h1_diff"] = *r.h1_diff;
        arr.push_back(row);
    }
    return arr;
}

inline nlohmann::json to_json(const MonteCarloReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < report.rows.size(); ++i)
        rows.push_back({{"experiment", i + 1},
                        {"l2_error", report.rows[i].l2_error},
                        {"h1_error", report.rows[i].h1_error}});
    return nlohmann::json{{"stage", report.stage},
                          {"rows", rows},
                          {"average",
                           {{"l2_error", report.average.l2_error},
                            {"h1_error", report.average.h1_error}}},
                          {"variance",
                           {{"l2_error", report.variance.l2_error},
                            {"h1_error", report.variance.h1_error}}}};
}

inline void write_report(const ExperimentReport& report, const ExperimentConfig& config,
                         const std::string& path, ReportFormat format) {
    std::ofstream out = detail::open_out(path);
    if (format == ReportFormat::csv) {
        if (const auto* rows = std::get_if<std::vector<ConvergenceRow>>(&report))
            write_study_csv(*rows, out);
        else
            write_montecarlo_csv(std::get<MonteCarloReport>(report), out);
        return;
    }
    nlohmann::json doc;
    doc["config"] = detail::metadata(config);
    if (const auto* rows = std::get_if<std::vector<ConvergenceRow>>(&report))
        doc["rows"] = to_json(*rows);
    else
        doc["montecarlo"] = to_json(std::get<MonteCarloReport>(report));
    out << doc.dump(2) << "\n";
}

/// CSV of the solution: x, nodal value, and the slope on the element left of
/// each node (the first row carries the first element's slope).
inline void write_solution_csv(const PiecewiseLinearFn& fn, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "x,p,dp_left\n";
    for (std::size_t i = 0; i < fn.mesh.size(); ++i) {
        const double slope = element_slope(fn, i == 0 ? 0 : i - 1);
        out << detail::fmt(fn.mesh.node(i), 17) << "," << detail::fmt(fn.values[i], 17) << ","
            << detail::fmt(slope, 17) << "\n";
    }
}

/// Plot-ready series: nodal values, per-element derivative steps, and the
/// interior microstructure points for the derivative plot's guide lines.
inline void emit_plot_data(const PiecewiseLinearFn& fn, const Microstructure& micro, int stage,
                           const std::string& prefix) {
    {
        std::ofstream out = detail::open_out(prefix + "_p.csv");
        out << "x,p\n";
        for (std::size_t i = 0; i < fn.mesh.size(); ++i)
            out << detail::fmt(fn.mesh.node(i), 17) << "," << detail::fmt(fn.values[i], 17)
                << "\n";
    }
    {
        std::ofstream out = detail::open_out(prefix + "_dp.csv");
        out << "x,dp\n";
        for (std::size_t e = 0; e < fn.mesh.element_count(); ++e) {
            const std::string s = detail::fmt(element_slope(fn, e), 17);
            out << detail::fmt(fn.mesh.node(e), 17) << "," << s << "\n";
            out << detail::fmt(fn.mesh.node(e + 1), 17) << "," << s << "\n";
        }
    }
    {
        std::ofstream out = detail::open_out(prefix + "_verticals.csv");
        out << "x\n";
        for (const Rational& b : micro.points(stage))
            if (!(b == kZero) && !(b == kOne)) out << detail::fmt(b.to_double(), 17) << "\n";
    }
}

}  // namespace fracfem
