// fracfem: construct self-similar interface microstructures and solve the
// associated 1-D transmission problems.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracfem/fracfem.hpp"

namespace {

using namespace fracfem;

BoundaryConditions parse_bc(const std::string& s) {
    if (s == "dn") return BoundaryConditions::dirichlet_neumann;
    if (s == "dd") return BoundaryConditions::dirichlet_dirichlet;
    throw std::invalid_argument("--bc expects dn or dd");
}

EndpointMode parse_endpoint(const std::string& s) {
    if (s == "include") return EndpointMode::include;
    if (s == "exclude") return EndpointMode::exclude;
    throw std::invalid_argument("--endpoint expects include or exclude");
}

NormConvention parse_convention(const std::string& s) {
    if (s == "semi") return NormConvention::h1_semi;
    if (s == "full") return NormConvention::h1_full;
    throw std::invalid_argument("--h1 expects semi or full");
}

ReportFormat parse_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw std::invalid_argument("--format expects csv or json");
}

std::pair<int, int> parse_stage_range(const std::string& s) {
    const std::size_t sep = s.find("..");
    if (sep == std::string::npos)
        throw std::invalid_argument("--stages expects a range like 6..9");
    const int lo = std::stoi(s.substr(0, sep));
    const int hi = std::stoi(s.substr(sep + 2));
    return {lo, hi};
}

double parse_ratio_token(const std::string& token) {
    const std::size_t slash = token.find('/');
    if (slash != std::string::npos) {
        const double num = std::stod(token.substr(0, slash));
        const double den = std::stod(token.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("ratio with zero denominator");
        return num / den;
    }
    return std::stod(token);
}

std::vector<double> parse_ratios(const std::string& list) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const std::size_t comma = list.find(',', pos);
        const std::string token =
            comma == std::string::npos ? list.substr(pos) : list.substr(pos, comma - pos);
        if (token.empty()) throw std::invalid_argument("--ratios has an empty entry");
        out.push_back(parse_ratio_token(token));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void warn_if_not_summable(const CoefficientSpec& spec) {
    if (is_random(spec)) return;
    // Cantor-extremes development doubles per stage
    if (!l1_ratio_test(spec, 2) && !std::holds_alternative<ConstantCoefficient>(spec))
        std::fprintf(stderr,
                     "warning: coefficient law fails the l1 ratio test for this development; "
                     "the full-series storage sum diverges (finite stages are unaffected)\n");
}

int run(int argc, char** argv) {
    CLI::App app{"Fractal-interface transmission problems: microstructures, P1 solves, "
                 "convergence studies, Monte-Carlo experiments"};
    app.require_subcommand(1);

    // develop
    auto* develop = app.add_subcommand("develop", "print the microstructure point list");
    int dev_stage = 0;
    std::string dev_out;
    develop->add_option("--stage", dev_stage, "development stage")->required();
    develop->add_option("--out", dev_out, "write to a file instead of stdout");

    // dimension
    auto* dimension = app.add_subcommand("dimension", "similarity dimension (Moran equation)");
    std::string ratios_arg;
    double tol = 1e-12;
    dimension->add_option("--ratios", ratios_arg, "comma-separated ratios, e.g. 1/3,1/3")
        ->required();
    dimension->add_option("--tol", tol, "bisection tolerance");

    // solve
    auto* solve = app.add_subcommand("solve", "solve one stage and write the solution CSV");
    int solve_stage = 6;
    std::string solve_coeff = "constant:1";
    bool no_forcing = false;
    std::string solve_bc = "dn", solve_endpoint = "include", solve_out, solve_plot;
    double solve_fratio = 1.0 / 3.0;
    std::uint64_t solve_seed = 0;
    std::uint64_t solve_realization = 0;
    solve->add_option("--stage", solve_stage, "development stage")->required();
    solve->add_option("--coeff", solve_coeff, "storage coefficient spec");
    solve->add_flag("--no-forcing", no_forcing, "drop the interface forcing");
    solve->add_option("--bc", solve_bc, "dn | dd");
    solve->add_option("--endpoint", solve_endpoint, "include | exclude");
    solve->add_option("--out", solve_out, "solution CSV path")->required();
    solve->add_option("--plot", solve_plot, "prefix for plot-data files");
    solve->add_option("--forcing-ratio", solve_fratio, "shell decay of the forcing");
    solve->add_option("--seed", solve_seed, "seed for a random coefficient");
    solve->add_option("--realization", solve_realization, "realization index for a random draw");

    // study
    auto* study = app.add_subcommand("study", "Cauchy convergence study over a stage range");
    std::string stages_arg = "6..9";
    std::string study_coeff = "constant:1";
    std::string study_bc = "dn", study_endpoint = "include", study_out, study_format = "csv";
    std::string study_h1 = "full";
    double study_fratio = 1.0 / 3.0;
    study->add_option("--stages", stages_arg, "inclusive range, e.g. 6..9")->required();
    study->add_option("--coeff", study_coeff, "storage coefficient spec");
    study->add_option("--bc", study_bc, "dn | dd");
    study->add_option("--endpoint", study_endpoint, "include | exclude");
    study->add_option("--out", study_out, "report path")->required();
    study->add_option("--format", study_format, "csv | json");
    study->add_option("--h1", study_h1, "h1 column convention: semi | full");
    study->add_option("--forcing-ratio", study_fratio, "shell decay of the forcing");

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "averaged random-coefficient experiments");
    int mc_stage = 8;
    std::string mc_coeff;
    int mc_realizations = 20, mc_experiments = 8;
    std::uint64_t mc_seed = 0;
    std::string mc_out, mc_format = "csv", mc_bc = "dn", mc_endpoint = "include",
                mc_h1 = "full";
    double mc_fratio = 1.0 / 3.0;
    mc->add_option("--stage", mc_stage, "development stage")->required();
    mc->add_option("--coeff", mc_coeff, "random:LO:HI")->required();
    mc->add_option("--realizations", mc_realizations, "realizations per experiment");
    mc->add_option("--experiments", mc_experiments, "experiment count");
    mc->add_option("--seed", mc_seed, "master seed")->required();
    mc->add_option("--out", mc_out, "report path")->required();
    mc->add_option("--format", mc_format, "csv | json");
    mc->add_option("--bc", mc_bc, "dn | dd");
    mc->add_option("--endpoint", mc_endpoint, "include | exclude");
    mc->add_option("--h1", mc_h1, "h1 column convention: semi | full");
    mc->add_option("--forcing-ratio", mc_fratio, "shell decay of the forcing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // 0 only for --help/--version; anything else is an argument error
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (develop->parsed()) {
        const Microstructure micro = Microstructure::cantor_extremes(dev_stage);
        if (dev_out.empty()) {
            micro.write_text(std::cout);
        } else {
            std::ofstream out(dev_out, std::ios::binary);
            if (!out) throw io_error("cannot open for writing: " + dev_out);
            micro.write_text(out);
        }
        return 0;
    }

    if (dimension->parsed()) {
        const double d = similarity_dimension(parse_ratios(ratios_arg), tol);
        std::printf("%.15g\n", d);
        return 0;
    }

    if (solve->parsed()) {
        const CoefficientSpec spec = parse_coefficient_spec(solve_coeff);
        warn_if_not_summable(spec);
        const auto bc = parse_bc(solve_bc);
        const auto endpoint = parse_endpoint(solve_endpoint);
        const Microstructure micro = Microstructure::cantor_extremes(solve_stage);
        const Mesh1D mesh = build_mesh(solve_stage);
        PointFunction beta = [&] {
            if (const auto* r = std::get_if<RandomUniformCoefficient>(&spec))
                return sample_random_beta(micro, solve_stage, r->lo, r->hi, solve_seed,
                                          solve_realization);
            return make_beta_table(spec, micro, solve_stage);
        }();
        const PointFunction f = no_forcing
                                    ? PointFunction::zero(micro, solve_stage)
                                    : make_forcing_table(micro, solve_stage, solve_fratio);
        const PiecewiseLinearFn p =
            solve_with_tables(mesh, micro, solve_stage, beta, {}, f, bc, endpoint);
        write_solution_csv(p, solve_out);
        if (!solve_plot.empty()) emit_plot_data(p, micro, solve_stage, solve_plot);
        const NormTriple t = norms(p);
        std::printf("stage=%d nodes=%zu l2=%.15g h1_semi=%.15g h1_full=%.15g endpoint=%s\n",
                    solve_stage, mesh.size(), t.l2, t.h1_semi, t.h1_full,
                    solve_endpoint.c_str());
        return 0;
    }

    if (study->parsed()) {
        const auto [lo, hi] = parse_stage_range(stages_arg);
        ExperimentConfig config;
        config.first_stage = lo;
        config.last_stage = hi;
        config.coefficient = parse_coefficient_spec(study_coeff);
        warn_if_not_summable(config.coefficient);
        config.bc = parse_bc(study_bc);
        config.endpoint = parse_endpoint(study_endpoint);
        config.convention = parse_convention(study_h1);
        config.forcing_ratio = study_fratio;
        write_report(run_experiment(config), config, study_out, parse_format(study_format));
        std::printf("wrote %s\n", study_out.c_str());
        return 0;
    }

    if (mc->parsed()) {
        ExperimentConfig config;
        config.first_stage = config.last_stage = mc_stage;
        config.coefficient = parse_coefficient_spec(mc_coeff);
        if (!is_random(config.coefficient))
            throw std::invalid_argument("montecarlo needs a random:LO:HI coefficient");
        config.bc = parse_bc(mc_bc);
        config.endpoint = parse_endpoint(mc_endpoint);
        config.convention = parse_convention(mc_h1);
        config.forcing_ratio = mc_fratio;
        config.realizations = mc_realizations;
        config.experiments = mc_experiments;
        config.seed = mc_seed;
        write_report(run_experiment(config), config, mc_out, parse_format(mc_format));
        std::printf("wrote %s\n", mc_out.c_str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const fracfem::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
}
