#include "bpdn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bpdn/error.hpp"
#include "bpdn/parallel.hpp"
#include "bpdn/temperature.hpp"

namespace bpdn {

using detail::require;

namespace {

std::string label(const std::string& key, double v) { return key + "=" + format_number(v); }

/// Column names carry the parameter at default precision ("density_u=0.4").
std::string column(const std::string& key, double v) {
    std::ostringstream s;
    s << key << '=' << v;
    return s.str();
}

std::string run_metadata(const CriterionRun& run) {
    std::ostringstream s;
    s << "t=" << format_number(run.t) << " T=" << format_number(run.temperature)
      << " N=" << run.chain_length << " M=" << run.replicates << " burn_in=" << run.burn_in
      << " seed=" << run.seed << " proposal=" << to_string(run.proposal)
      << " start=" << to_string(run.start);
    return s.str();
}

double running_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

Regime table_regime(int table_id) {
    switch (table_id) {
        case 1: return Regime::interior;
        case 2: return Regime::boundary;
        case 3: return Regime::exterior;
    }
    throw InvalidArgument("table id must be 1, 2 or 3 (table 4 has its own runner)");
}

ProposalFamily default_proposal_family() { return {{1.0, 9.0, 16.0}}; }

CriterionReport run_table(int table_id, const CriterionRun& run, const ProposalFamily& family,
                          const ChainSampler& sampler) {
    return rank_proposals(family, table_regime(table_id), run, sampler);
}

CsvTable criterion_csv(const CriterionReport& report) {
    CsvTable table({"proposal_sigma2", "f1", "f2", "f1_plus_f2"});
    table.add_metadata(std::string("regime=") + to_string(report.regime));
    table.add_metadata(run_metadata(report.run));
    table.add_metadata(label("best_sigma2", report.best_sigma2));
    for (const auto& row : report.rows) table.add_row({row.sigma2, row.f1, row.f2, row.sum()});
    return table;
}

double target_temperature(double y, double t, double bias, double mse) {
    require(t > 0.0, "t must be positive");
    const double ay = std::abs(y);
    const Regime regime = classify_regime(ay, t);
    switch (regime) {
        case Regime::interior:
            if (ay == 0.0) return temperature_from_mse(regime, 0.0, mse);
            return consistent_temperature({regime, ay / t, bias, mse});
        case Regime::boundary:
            return consistent_temperature({regime, t, bias, mse});
        case Regime::exterior:
            return temperature_from_mse(regime, t, mse);
    }
    return 0.0;
}

Table4Report run_table4(const Table4Params& params, const ChainSampler& sampler) {
    require(!params.n_list.empty(), "N list is empty");
    require(std::all_of(params.n_list.begin(), params.n_list.end(),
                        [](std::size_t n) { return n > 0; }),
            "every N must be positive");
    Table4Report report;
    report.temperature = target_temperature(params.y, params.t, params.bias, params.mse);

    CriterionRun run;
    run.t = params.t;
    run.temperature = report.temperature;
    run.chain_length = *std::max_element(params.n_list.begin(), params.n_list.end());
    run.replicates = 1;
    run.seed = params.seed;
    run.proposal = params.proposal;
    run.start = ChainStart::zero;
    const auto chain =
        sampler(params.y, params.proposal_sigma2, run, derive_seed(params.seed, 0));
    require(chain.size() >= run.chain_length, "sampler returned a short chain");

    for (std::size_t n : params.n_list) {
        double s1 = 0.0;
        double s2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s1 += chain[k];
            s2 += chain[k] * chain[k];
        }
        report.rows.push_back({n, s1 / static_cast<double>(n), s2 / static_cast<double>(n)});
    }
    return report;
}

CsvTable table4_csv(const Table4Params& params, const Table4Report& report) {
    CsvTable table({"n", "b_n", "mse_n"});
    std::ostringstream s;
    s << "y=" << format_number(params.y) << " t=" << format_number(params.t)
      << " b=" << format_number(params.bias) << " MSE=" << format_number(params.mse)
      << " sigma2=" << format_number(params.proposal_sigma2) << " seed=" << params.seed
      << " proposal=" << to_string(params.proposal) << " start=zero";
    table.add_metadata(s.str());
    table.add_metadata(label("temperature", report.temperature));
    for (const auto& row : report.rows)
        table.add_row({static_cast<long long>(row.n), row.b_n, row.mse_n});
    return table;
}

ComparisonReport run_comparison(const ComparisonParams& params) {
    require(params.replicates > 0, "replicate count must be positive");
    require(params.beta0 > 0.0, "beta0 must be positive");
    ComparisonReport report;
    report.temperature = target_temperature(params.y, params.t, params.bias, params.mse);
    report.target = soft_threshold(params.y, params.t);
    report.n_budget = sa_iterations(1.0 / params.beta0, report.temperature, params.q);
    require(report.n_budget > 0, "SA budget is zero: the target temperature equals T0");

    const std::size_t r = params.replicates;
    report.mh_final.resize(r);
    report.sa_final.resize(r);
    report.mh_running_mean.resize(r);
    report.sa_running_mean.resize(r);
    const Problem problem = scalar_problem(params.y, params.t);
    const std::uint64_t sa_master = derive_seed(params.seed, streams::annealing);

    parallel_for(r, params.threads, [&](std::size_t i) {
        MhConfig mh;
        mh.temperature = report.temperature;
        mh.proposal_sigma2 = params.proposal_sigma2;
        mh.chain_length = report.n_budget;
        mh.seed = derive_seed(params.seed, i);
        const auto mh_states = mh_chain_1d(params.y, params.t, mh);

        AnnealConfig sa;
        sa.beta0 = params.beta0;
        sa.q = params.q;
        sa.chain_length = report.n_budget;
        sa.proposal_sigma2 = params.proposal_sigma2;
        sa.seed = derive_seed(sa_master, i);
        const auto sa_result = sa_chain(problem, sa);
        const auto sa_states = sa_result.component(0);

        report.mh_final[i] = mh_states.back();
        report.sa_final[i] = sa_states.back();
        report.mh_running_mean[i] = running_mean(mh_states);
        report.sa_running_mean[i] = running_mean(sa_states);
        if (i == 0) {
            report.mh_trajectory = mh_states;
            report.sa_trajectory = sa_states;
            report.sa_temperatures = sa_result.temperatures();
        }
    });

    const double radius = 3.0 * std::sqrt(params.mse);
    auto within = [&](const std::vector<double>& finals) {
        const auto hits = std::count_if(finals.begin(), finals.end(), [&](double x) {
            return std::abs(x - report.target) <= radius;
        });
        return static_cast<double>(hits) / static_cast<double>(finals.size());
    };
    report.mh_within = within(report.mh_final);
    report.sa_within = within(report.sa_final);
    return report;
}

CsvTable comparison_csv(const ComparisonParams& params, const ComparisonReport& report) {
    CsvTable table({"replicate", "mh_final_state", "sa_final_state", "mh_running_mean",
                    "sa_running_mean"});
    std::ostringstream s;
    s << "y=" << format_number(params.y) << " t=" << format_number(params.t)
      << " b=" << format_number(params.bias) << " MSE=" << format_number(params.mse)
      << " q=" << format_number(params.q) << " beta0=" << format_number(params.beta0)
      << " T0=" << format_number(1.0 / params.beta0)
      << " sigma2=" << format_number(params.proposal_sigma2)
      << " replicates=" << params.replicates << " seed=" << params.seed;
    table.add_metadata(s.str());
    table.add_metadata(label("temperature", report.temperature) +
                       " n_budget=" + std::to_string(report.n_budget));
    table.add_metadata(label("mh_final_mean", running_mean(report.mh_final)) + " " +
                       label("sa_final_mean", running_mean(report.sa_final)));
    table.add_metadata(label("mh_within_3sd", report.mh_within) + " " +
                       label("sa_within_3sd", report.sa_within));
    for (std::size_t i = 0; i < report.mh_final.size(); ++i)
        table.add_row({static_cast<long long>(i), report.mh_final[i], report.sa_final[i],
                       report.mh_running_mean[i], report.sa_running_mean[i]});
    return table;
}

CsvTable emit_figure_data(int figure_id, const FigureParams& p) {
    require(p.points >= 2, "figure grids need at least two points");
    const auto n = p.points;
    switch (figure_id) {
        case 1: {
            require(p.x_min < p.x_max, "x range is empty");
            std::vector<std::string> header{"x"};
            for (double u : p.u_values) header.push_back(column("density_u", u));
            CsvTable table(header);
            for (std::size_t k = 0; k < n; ++k) {
                const double x =
                    p.x_min + (p.x_max - p.x_min) * static_cast<double>(k) / (n - 1.0);
                std::vector<CsvTable::Cell> row{x};
                for (double u : p.u_values) row.emplace_back(interior_density(u, x));
                table.add_row(std::move(row));
            }
            return table;
        }
        case 2: {
            CsvTable table({"u", "t_bias", "t_mse"});
            table.add_metadata(label("b", p.bias) + " " + label("MSE", p.mse));
            for (const auto& c : temperature_curves(p.bias, p.mse, n))
                table.add_row({c.u, c.t_bias, c.t_mse});
            return table;
        }
        case 3: {
            CsvTable table({"u", "constraint", "mse", "t_mse"});
            table.add_metadata(label("u_fixed", p.u));
            const auto curves = temperature_curves(p.bias, p.mse, n);
            for (std::size_t k = 0; k < n; ++k) {
                const double mse = p.mse_max_fig3 * (k + 1.0) / (n + 1.0);
                table.add_row({curves[k].u, curves[k].constraint, mse,
                               temp_from_mse_interior(mse, p.u)});
            }
            return table;
        }
        case 4: {
            std::vector<std::string> header{"mse"};
            for (double y : p.y_values) header.push_back(column("n_sa_y", y));
            CsvTable table(header);
            table.add_metadata(label("t", p.t) + " " + label("q", p.q) + " " +
                               label("beta0", p.beta0));
            for (std::size_t k = 0; k < n; ++k) {
                const double mse = p.mse_max_fig4 * (k + 1.0) / (n + 1.0);
                std::vector<CsvTable::Cell> row{mse};
                for (double y : p.y_values) {
                    const double ay = std::abs(y);
                    const Regime regime = classify_regime(ay, p.t);
                    const double param = regime == Regime::interior ? ay / p.t : p.t;
                    const double temp = temperature_from_mse(regime, param, mse);
                    row.emplace_back(static_cast<long long>(
                        temp >= 1.0 / p.beta0 ? 0 : sa_iterations(1.0 / p.beta0, temp, p.q)));
                }
                table.add_row(std::move(row));
            }
            return table;
        }
        case 5: {
            const auto report = run_comparison(p.comparison);
            CsvTable table({"n", "sa_temperature", "theta_mh", "theta_sa"});
            table.add_metadata(label("temperature", report.temperature) +
                               " n_budget=" + std::to_string(report.n_budget) +
                               " sigma2=" + format_number(p.comparison.proposal_sigma2) +
                               " replicates=1 seed=" + std::to_string(p.comparison.seed));
            for (std::size_t k = 0; k < report.n_budget; ++k)
                table.add_row({static_cast<long long>(k + 1), report.sa_temperatures[k],
                               report.mh_trajectory[k], report.sa_trajectory[k]});
            return table;
        }
    }
    throw InvalidArgument("figure id must be between 1 and 5");
}

}  // namespace bpdn
