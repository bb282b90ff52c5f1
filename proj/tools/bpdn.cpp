// Command-line entry point: solver, samplers, criteria, temperature
// selection, scaling checks and the table/figure reproductions.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bpdn/criteria.hpp"
#include "bpdn/csv.hpp"
#include "bpdn/error.hpp"
#include "bpdn/fista.hpp"
#include "bpdn/gibbs.hpp"
#include "bpdn/harness.hpp"
#include "bpdn/scaling.hpp"
#include "bpdn/temperature.hpp"

namespace {

using namespace bpdn;

constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;

struct Globals {
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string config;
    unsigned threads = 0;
};

struct ProblemArgs {
    std::string file;
    std::optional<double> y;
    double t = 1.0;

    Problem load() const {
        if (!file.empty()) return load_problem(file);
        if (!y) throw InvalidArgument("give either --problem FILE or --y (with --t)");
        return scalar_problem(*y, t);
    }
};

void add_problem_options(CLI::App* sub, ProblemArgs& p) {
    sub->add_option("--problem", p.file, "problem file: 'n p t', A row by row, then y")
        ->check(CLI::ExistingFile);
    sub->add_option("--y", p.y, "scalar data y (1D problem)");
    sub->add_option("--t", p.t, "regularization t")->check(CLI::PositiveNumber);
}

std::string flatten(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
    return s;
}

/// Reads "key = value" lines ('#' starts a comment) from the config file.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t number = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++number;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("config line " + std::to_string(number) + " lacks '='");
        std::string key = trim(line.substr(0, eq));
        key.erase(0, key.find_first_not_of('-'));
        if (key.empty())
            throw InvalidArgument("config line " + std::to_string(number) + " has no key");
        out.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return out;
}

/// Splices config entries into argv right after the subcommand name. Keys
/// already given on the command line are skipped, so flags take precedence
/// over the file and the file over built-in defaults.
std::vector<std::string> merge_config(const std::vector<std::string>& args,
                                      const std::set<std::string>& subcommands) {
    static const std::set<std::string> valued_globals{"--seed", "--out", "--config", "--threads"};
    std::string config;
    std::optional<std::size_t> sub_pos;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--config" && i + 1 < args.size()) config = args[i + 1];
        if (a.rfind("--config=", 0) == 0) config = a.substr(9);
        if (!sub_pos && subcommands.count(a)) sub_pos = i;
        if (!sub_pos && valued_globals.count(a)) ++i;
    }
    if (config.empty() || !sub_pos) return args;

    std::set<std::string> given;
    for (const auto& a : args) {
        if (a.size() < 2 || a[0] != '-') continue;
        given.insert(a.substr(0, a.find('=')));
    }
    std::vector<std::string> out(args.begin(), args.begin() + *sub_pos + 1);
    for (const auto& [key, value] : read_config(config)) {
        const auto token = "--" + key;
        if (given.count(token)) continue;
        out.push_back(token + "=" + value);
    }
    out.insert(out.end(), args.begin() + *sub_pos + 1, args.end());
    return out;
}

struct CriteriaArgs {
    CriterionRun run;
    std::vector<double> sigma2{1.0, 9.0, 16.0};
    std::string proposal = "random-walk";
    std::string start = "solution";
    std::optional<double> beta_a, beta_b, pareto_alpha;

    void add(CLI::App* sub) {
        sub->add_option("--t", run.t, "regularization t")->check(CLI::PositiveNumber);
        sub->add_option("--T", run.temperature, "temperature")->check(CLI::PositiveNumber);
        sub->add_option("--N", run.chain_length, "chain length")->check(CLI::PositiveNumber);
        sub->add_option("--M", run.replicates, "replicates")->check(CLI::PositiveNumber);
        sub->add_option("--burn-in", run.burn_in, "discarded initial transitions");
        sub->add_option("--sigma2", sigma2, "proposal variances")->delimiter(',');
        sub->add_option("--proposal", proposal, "random-walk or independence");
        sub->add_option("--start", start, "chain start: zero, data or solution");
        sub->add_option("--beta-a", beta_a, "interior design Beta(a, b), parameter a");
        sub->add_option("--beta-b", beta_b, "interior design Beta(a, b), parameter b");
        sub->add_option("--pareto-alpha", pareto_alpha, "exterior design Pareto(alpha, t)");
    }

    CriterionRun finish(const Globals& g) {
        run.seed = g.seed;
        run.threads = g.threads;
        run.proposal = parse_proposal_kind(proposal);
        run.start = parse_chain_start(start);
        if (beta_a || beta_b)
            run.interior_design = DesignDistribution::beta(beta_a.value_or(1.0), beta_b.value_or(3.0));
        if (pareto_alpha) run.exterior_design = DesignDistribution::pareto(*pareto_alpha, run.t);
        return run;
    }
};

void print_summary(const Globals& g, const std::string& text) {
    // Keep stdout clean for CSV when the table itself goes there.
    (g.out == "-" || g.out.empty() ? std::cerr : std::cout) << text;
}

int run(int argc, char** argv) {
    CLI::App app{"Basis pursuit denoising: solver, Gibbs samplers and zero-temperature checks"};
    app.fallthrough();
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "master seed");
    app.add_option("--out", g.out, "output CSV path ('-' for stdout)");
    app.add_option("--config", g.config, "key=value file; command-line flags take precedence");
    app.add_option("--threads", g.threads, "worker threads (0: hardware concurrency)");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve the BPDN problem with FISTA");
    ProblemArgs solve_problem;
    SolverOptions solver;
    add_problem_options(solve_cmd, solve_problem);
    solve_cmd->add_option("--max-iter", solver.max_iterations, "iteration cap");
    solve_cmd->add_option("--tol", solver.gradient_tolerance, "gradient-mapping tolerance");
    solve_cmd->add_option("--support-tol", solver.support_tolerance, "zero threshold");
    solve_cmd->add_option("--certificate-tol", solver.certificate_tolerance,
                          "saturation threshold for |xi|");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Metropolis-Hastings at fixed temperature");
    ProblemArgs sample_problem;
    MhConfig mh;
    std::string sample_proposal = "random-walk";
    std::vector<double> sample_init;
    add_problem_options(sample_cmd, sample_problem);
    sample_cmd->add_option("--T", mh.temperature, "temperature")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--sigma2", mh.proposal_sigma2, "proposal variance");
    sample_cmd->add_option("--N", mh.chain_length, "chain length");
    sample_cmd->add_option("--burn-in", mh.burn_in, "discarded initial transitions");
    sample_cmd->add_option("--proposal", sample_proposal, "random-walk or independence");
    sample_cmd->add_option("--init", sample_init, "initial state (default 0)")->delimiter(',');

    // anneal
    auto* anneal_cmd = app.add_subcommand("anneal", "simulated annealing, T_n = 1/(beta0 q^n)");
    ProblemArgs anneal_problem;
    AnnealConfig sa;
    std::optional<double> anneal_target;
    std::string anneal_proposal = "random-walk";
    std::vector<double> anneal_init;
    add_problem_options(anneal_cmd, anneal_problem);
    anneal_cmd->add_option("--beta0", sa.beta0, "initial inverse temperature");
    anneal_cmd->add_option("--q", sa.q, "tempering ratio (> 1)");
    anneal_cmd->add_option("--N", sa.chain_length, "number of steps");
    anneal_cmd->add_option("--target-T", anneal_target,
                           "stop at this temperature (overrides --N)");
    anneal_cmd->add_option("--sigma2", sa.proposal_sigma2, "proposal variance");
    anneal_cmd->add_option("--proposal", anneal_proposal, "random-walk or independence");
    anneal_cmd->add_option("--init", anneal_init, "initial state (default 0)")->delimiter(',');

    // criteria
    auto* criteria_cmd = app.add_subcommand("criteria", "proposal-selection criteria f1, f2");
    CriteriaArgs criteria;
    std::string criteria_regime;
    criteria_cmd->add_option("--regime", criteria_regime, "interior, boundary or exterior")
        ->required();
    criteria.add(criteria_cmd);

    // temperature
    auto* temp_cmd = app.add_subcommand("temperature", "temperature from a bias/MSE target");
    std::optional<double> temp_y, temp_u, temp_b;
    double temp_t = 1.0;
    double temp_mse = 0.0;
    double temp_rel_tol = strict_constraint_tolerance;
    bool emit_curves = false;
    std::size_t curve_points = 512;
    temp_cmd->add_option("--y", temp_y, "data y");
    temp_cmd->add_option("--u", temp_u, "u = y / t (interior)");
    temp_cmd->add_option("--t", temp_t, "regularization t")->check(CLI::PositiveNumber);
    temp_cmd->add_option("--b", temp_b, "target bias");
    temp_cmd->add_option("--mse", temp_mse, "target mean square error");
    temp_cmd->add_option("--rel-tol", temp_rel_tol, "relative tolerance on the b/MSE constraint");
    temp_cmd->add_flag_callback(
        "--relaxed", [&] { temp_rel_tol = relaxed_constraint_tolerance; },
        "accept b/MSE pairs within 5% of the constraint");
    temp_cmd->add_flag("--emit-curves", emit_curves, "write u -> T(b,u), T(MSE,u), m1^2/m2");
    temp_cmd->add_option("--points", curve_points, "grid size for --emit-curves");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "KS distance to the 1D limit laws");
    double verify_y = 0.5;
    double verify_t = 1.0;
    std::vector<double> verify_temps{1.0, 0.1, 0.01, 0.001};
    std::size_t verify_n = 10000;
    ScalingOptions scaling;
    verify_cmd->add_option("--y", verify_y, "data y");
    verify_cmd->add_option("--t", verify_t, "regularization t")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--temps", verify_temps, "temperatures")->delimiter(',');
    verify_cmd->add_option("--n", verify_n, "thinned samples per temperature");
    verify_cmd->add_option("--sigma2", scaling.proposal_sigma2, "proposal variance");
    verify_cmd->add_option("--pilot", scaling.pilot_length, "pilot chain length");

    // limit-density
    auto* density_cmd =
        app.add_subcommand("limit-density",
                           "1D interior densities on a grid, or with --problem a chi-square "
                           "test against the n-D limit density");
    std::string density_file;
    double density_temp = 1e-3;
    std::size_t density_n = 5000;
    std::size_t density_bins = 8;
    std::size_t density_refine = 16;
    ScalingOptions density_opts;
    FigureParams density_grid;
    density_cmd->add_option("--problem", density_file, "problem file")->check(CLI::ExistingFile);
    density_cmd->add_option("--u-values", density_grid.u_values, "grid mode: u values")
        ->delimiter(',');
    density_cmd->add_option("--x-min", density_grid.x_min, "grid mode: grid start");
    density_cmd->add_option("--x-max", density_grid.x_max, "grid mode: grid end");
    density_cmd->add_option("--points", density_grid.points, "grid mode: grid size");
    density_cmd->add_option("--T", density_temp, "temperature")->check(CLI::PositiveNumber);
    density_cmd->add_option("--n", density_n, "thinned samples");
    density_cmd->add_option("--bins", density_bins, "equal-probability bins per axis");
    density_cmd->add_option("--refine", density_refine, "midpoint sub-points per bin and axis");
    density_cmd->add_option("--sigma2", density_opts.proposal_sigma2, "proposal variance");
    density_cmd->add_option("--pilot", density_opts.pilot_length, "pilot chain length");

    // table
    auto* table_cmd = app.add_subcommand("table", "reproduce Table 1, 2, 3 or 4");
    int table_id = 0;
    CriteriaArgs table_criteria;
    Table4Params table4;
    table_cmd->add_option("id", table_id, "table number")->required()->check(CLI::Range(1, 4));
    table_criteria.add(table_cmd);
    table_cmd->add_option("--y", table4.y, "table 4: data y");
    table_cmd->add_option("--b", table4.bias, "table 4: target bias");
    table_cmd->add_option("--mse", table4.mse, "table 4: target MSE");
    table_cmd->add_option("--n-list", table4.n_list, "table 4: chain lengths")->delimiter(',');

    // compare
    auto* compare_cmd = app.add_subcommand("compare", "MH at T_{b,MSE} against SA");
    ComparisonParams cmp;
    compare_cmd->add_option("--y", cmp.y, "data y");
    compare_cmd->add_option("--t", cmp.t, "regularization t")->check(CLI::PositiveNumber);
    compare_cmd->add_option("--b", cmp.bias, "target bias");
    compare_cmd->add_option("--mse", cmp.mse, "target MSE");
    compare_cmd->add_option("--q", cmp.q, "tempering ratio");
    compare_cmd->add_option("--beta0", cmp.beta0, "initial inverse temperature");
    compare_cmd->add_option("--sigma2", cmp.proposal_sigma2, "proposal variance");
    compare_cmd->add_option("--replicates", cmp.replicates, "independent MH/SA pairs");

    // figure
    auto* figure_cmd = app.add_subcommand("figure", "data behind figures 1-5");
    int figure_id = 0;
    FigureParams fig;
    figure_cmd->add_option("id", figure_id, "figure number")->required()->check(CLI::Range(1, 5));
    figure_cmd->add_option("--points", fig.points, "grid size");
    figure_cmd->add_option("--u-values", fig.u_values, "figure 1: u values")->delimiter(',');
    figure_cmd->add_option("--x-min", fig.x_min, "figure 1: grid start");
    figure_cmd->add_option("--x-max", fig.x_max, "figure 1: grid end");
    figure_cmd->add_option("--b", fig.bias, "figure 2: bias");
    figure_cmd->add_option("--mse", fig.mse, "figure 2: MSE");
    figure_cmd->add_option("--u", fig.u, "figure 3: u");
    figure_cmd->add_option("--y-values", fig.y_values, "figure 4: data values")->delimiter(',');
    figure_cmd->add_option("--t", fig.t, "figure 4: t");
    figure_cmd->add_option("--q", fig.q, "figures 4-5: tempering ratio");
    figure_cmd->add_option("--beta0", fig.beta0, "figures 4-5: initial inverse temperature");
    figure_cmd->add_option("--sigma2", fig.comparison.proposal_sigma2, "figure 5: proposal variance");

    std::set<std::string> names;
    for (const auto* sub : app.get_subcommands({})) names.insert(sub->get_name());
    std::vector<std::string> args(argv, argv + argc);
    args = merge_config(args, names);
    std::vector<const char*> cargs;
    for (const auto& a : args) cargs.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    if (solve_cmd->parsed()) {
        const auto problem = solve_problem.load();
        const auto sol = solve(problem, solver);
        CsvTable table({"index", "x_star", "xi", "class"});
        table.add_metadata("m=" + format_number(sol.m) + " iterations=" +
                           std::to_string(sol.iterations) +
                           " gradient_mapping_norm=" + format_number(sol.gradient_mapping_norm));
        table.add_metadata(std::string("certified_unique=") + (sol.unique ? "yes" : "no"));
        for (Eigen::Index i = 0; i < sol.x_star.size(); ++i)
            table.add_row({static_cast<long long>(i), sol.x_star(i), sol.xi(i),
                           std::string(to_string(sol.partition.membership(
                               static_cast<std::size_t>(i))))});
        table.save(g.out);
        print_summary(g, "m = " + format_number(sol.m) + "\ncertified unique: " +
                             (sol.unique ? "yes" : "no") + "\n");
    } else if (sample_cmd->parsed()) {
        const auto problem = sample_problem.load();
        mh.seed = g.seed;
        mh.proposal = parse_proposal_kind(sample_proposal);
        if (!sample_init.empty())
            mh.initial_state = Eigen::Map<const Vector>(sample_init.data(),
                                                        static_cast<Eigen::Index>(sample_init.size()));
        const auto chain = mh_chain(problem, mh);
        std::vector<std::string> header{"step"};
        for (std::size_t i = 0; i < chain.dim(); ++i) header.push_back("x" + std::to_string(i));
        CsvTable table(header);
        table.add_metadata("T=" + format_number(mh.temperature) +
                           " sigma2=" + format_number(mh.proposal_sigma2) +
                           " N=" + std::to_string(mh.chain_length) +
                           " burn_in=" + std::to_string(mh.burn_in) +
                           " seed=" + std::to_string(mh.seed) +
                           " proposal=" + to_string(mh.proposal));
        table.add_metadata("acceptance_rate=" + format_number(chain.acceptance_rate()));
        for (std::size_t k = 0; k < chain.size(); ++k) {
            std::vector<CsvTable::Cell> row{static_cast<long long>(mh.burn_in + k + 1)};
            for (double v : chain.state(k)) row.emplace_back(v);
            table.add_row(std::move(row));
        }
        table.save(g.out);
    } else if (anneal_cmd->parsed()) {
        const auto problem = anneal_problem.load();
        sa.seed = g.seed;
        sa.proposal = parse_proposal_kind(anneal_proposal);
        if (anneal_target) sa.chain_length = sa_iterations(1.0 / sa.beta0, *anneal_target, sa.q);
        if (!anneal_init.empty())
            sa.initial_state = Eigen::Map<const Vector>(anneal_init.data(),
                                                        static_cast<Eigen::Index>(anneal_init.size()));
        const auto chain = sa_chain(problem, sa);
        std::vector<std::string> header{"step", "temperature"};
        for (std::size_t i = 0; i < chain.dim(); ++i) header.push_back("x" + std::to_string(i));
        CsvTable table(header);
        table.add_metadata("beta0=" + format_number(sa.beta0) + " q=" + format_number(sa.q) +
                           " N=" + std::to_string(sa.chain_length) +
                           " sigma2=" + format_number(sa.proposal_sigma2) +
                           " seed=" + std::to_string(sa.seed));
        table.add_metadata("acceptance_rate=" + format_number(chain.acceptance_rate()));
        for (std::size_t k = 0; k < chain.size(); ++k) {
            std::vector<CsvTable::Cell> row{static_cast<long long>(k + 1), chain.temperatures()[k]};
            for (double v : chain.state(k)) row.emplace_back(v);
            table.add_row(std::move(row));
        }
        table.save(g.out);
    } else if (criteria_cmd->parsed()) {
        const auto run = criteria.finish(g);
        const auto report =
            rank_proposals({criteria.sigma2}, parse_regime(criteria_regime), run);
        criterion_csv(report).save(g.out);
    } else if (temp_cmd->parsed()) {
        if (emit_curves) {
            if (!temp_b) throw InvalidArgument("--emit-curves needs --b and --mse");
            CsvTable table({"u", "t_bias", "t_mse", "constraint"});
            table.add_metadata("b=" + format_number(*temp_b) + " MSE=" + format_number(temp_mse));
            for (const auto& c : temperature_curves(*temp_b, temp_mse, curve_points))
                table.add_row({c.u, c.t_bias, c.t_mse, c.constraint});
            table.save(g.out);
        } else {
            if (temp_u && temp_y) throw InvalidArgument("give --u or --y, not both");
            const double y = temp_u ? *temp_u * temp_t : temp_y.value_or(0.0);
            if (!temp_u && !temp_y) throw InvalidArgument("give --u or --y");
            const double ay = std::abs(y);
            const Regime regime = classify_regime(ay, temp_t);
            TemperatureTarget target;
            target.regime = regime;
            target.parameter = regime == Regime::interior ? ay / temp_t : temp_t;
            target.bias = temp_b;
            target.mse = temp_mse;
            const double temp = consistent_temperature(target, temp_rel_tol);
            CsvTable table({"regime", "parameter", "bias", "mse", "temperature"});
            table.add_row({std::string(to_string(regime)), target.parameter,
                           temp_b.value_or(0.0), temp_mse, temp});
            table.save(g.out);
        }
    } else if (verify_cmd->parsed()) {
        scaling.threads = g.threads;
        const auto rows = verify_scaling_1d(verify_y, verify_t, verify_temps, verify_n, g.seed,
                                            scaling);
        CsvTable table({"temperature", "regime", "ks", "samples", "thinning", "acceptance_rate",
                        "negative_event_frequency", "positive_event_frequency"});
        table.add_metadata("y=" + format_number(verify_y) + " t=" + format_number(verify_t) +
                           " n=" + std::to_string(verify_n) + " seed=" + std::to_string(g.seed));
        for (const auto& r : rows)
            table.add_row({r.temperature, std::string(to_string(r.regime)), r.ks,
                           static_cast<long long>(r.samples), static_cast<long long>(r.thinning),
                           r.acceptance_rate, r.negative_event_frequency,
                           r.positive_event_frequency});
        table.save(g.out);
    } else if (density_cmd->parsed() && density_file.empty()) {
        emit_figure_data(1, density_grid).save(g.out);
    } else if (density_cmd->parsed()) {
        const auto problem = load_problem(density_file);
        const auto check = verify_limit_density(problem, density_temp, density_n, g.seed,
                                                density_opts, density_bins, density_refine);
        CsvTable table({"statistic", "dof", "p_value", "samples_used", "thinning",
                        "acceptance_rate", "proposal_sigma2"});
        table.add_metadata("T=" + format_number(density_temp) + " seed=" + std::to_string(g.seed) +
                           " x_star=" + flatten({check.solution.x_star.begin(),
                                                 check.solution.x_star.end()}) +
                           " xi=" + flatten({check.solution.xi.begin(), check.solution.xi.end()}));
        const auto& c = check.chi_square;
        table.add_row({c.statistic, static_cast<long long>(c.dof), c.p_value,
                       static_cast<long long>(c.samples_used),
                       static_cast<long long>(check.thinning), check.acceptance_rate,
                       check.proposal_sigma2});
        table.save(g.out);
    } else if (table_cmd->parsed()) {
        const auto run = table_criteria.finish(g);
        if (table_id == 4) {
            table4.t = run.t;
            table4.seed = g.seed;
            table4.proposal = run.proposal;
            if (table_criteria.sigma2.size() != 1 && table_cmd->count("--sigma2"))
                throw InvalidArgument("table 4 takes a single --sigma2");
            table4.proposal_sigma2 = table_cmd->count("--sigma2") ? table_criteria.sigma2[0] : 1.0;
            const auto report = run_table4(table4);
            table4_csv(table4, report).save(g.out);
        } else {
            const auto report = run_table(table_id, run, {table_criteria.sigma2});
            criterion_csv(report).save(g.out);
        }
    } else if (compare_cmd->parsed()) {
        cmp.seed = g.seed;
        cmp.threads = g.threads;
        const auto report = run_comparison(cmp);
        comparison_csv(cmp, report).save(g.out);
    } else if (figure_cmd->parsed()) {
        fig.comparison.seed = g.seed;
        fig.comparison.q = fig.q;
        fig.comparison.beta0 = fig.beta0;
        fig.comparison.threads = g.threads;
        emit_figure_data(figure_id, fig).save(g.out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const bpdn::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
}
