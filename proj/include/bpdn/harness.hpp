#pragma once

#include <cstdint>
#include <vector>

#include "bpdn/criteria.hpp"
#include "bpdn/csv.hpp"

namespace bpdn {

/// Regime reproduced by Table 1 (interior), 2 (boundary) or 3 (exterior).
Regime table_regime(int table_id);

/// Variances compared in Tables 1-3.
ProposalFamily default_proposal_family();

/// Ranks the family in the table's regime; `run` defaults match the captions.
CriterionReport run_table(int table_id, const CriterionRun& run = {},
                          const ProposalFamily& family = default_proposal_family(),
                          const ChainSampler& sampler = mh_sampler());

/// Columns proposal_sigma2, f1, f2, f1_plus_f2, with the run parameters and
/// the winning variance as metadata.
CsvTable criterion_csv(const CriterionReport& report);

struct Table4Params {
    double y = 0.5;
    double t = 1.0;
    double bias = 0.01;
    double mse = 3.5e-4;
    double proposal_sigma2 = 1.0;
    std::vector<std::size_t> n_list{2000, 5000, 8000};
    std::uint64_t seed = 1;
    ProposalKind proposal = ProposalKind::random_walk;
};

struct Table4Row {
    std::size_t n;
    double b_n;    ///< (1/N) sum theta^n
    double mse_n;  ///< (1/N) sum (theta^n)^2
};

struct Table4Report {
    double temperature = 0.0;
    std::vector<Table4Row> rows;
};

/// Derives T_{b,MSE} for (y, t), runs one chain of length max(n_list) started
/// at 0 and reports the running averages at each N.
Table4Report run_table4(const Table4Params& params = {},
                        const ChainSampler& sampler = mh_sampler());
CsvTable table4_csv(const Table4Params& params, const Table4Report& report);

struct ComparisonParams {
    double y = 0.5;
    double t = 1.0;
    double bias = 0.01;
    double mse = 3.5e-4;
    double q = 1.001;
    double beta0 = 1.0;
    double proposal_sigma2 = 1.0;
    std::size_t replicates = 1;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

/// MH at fixed T_{b,MSE} against SA cooled from T0 = 1 / beta0 down to
/// T_{b,MSE}, both run for the SA budget. Per-replicate vectors are indexed by
/// replicate; trajectories belong to replicate 0.
struct ComparisonReport {
    double temperature = 0.0;
    double target = 0.0;  ///< soft(y, t)
    std::size_t n_budget = 0;
    std::vector<double> mh_final;
    std::vector<double> sa_final;
    std::vector<double> mh_running_mean;
    std::vector<double> sa_running_mean;
    std::vector<double> mh_trajectory;
    std::vector<double> sa_trajectory;
    std::vector<double> sa_temperatures;
    /// Fraction of replicates whose final state lies within 3 sqrt(MSE) of soft(y, t).
    double mh_within = 0.0;
    double sa_within = 0.0;
};

/// Temperature matching (bias, mse) at (y, t) in the regime of y. The exterior
/// regime uses the MSE alone.
double target_temperature(double y, double t, double bias, double mse);

ComparisonReport run_comparison(const ComparisonParams& params = {});
/// One row per replicate: final_state and running_mean for both samplers.
CsvTable comparison_csv(const ComparisonParams& params, const ComparisonReport& report);

struct FigureParams {
    // Figure 1: densities of X(y, 1) on an x grid.
    std::vector<double> u_values{0.0, 0.4, 0.9};
    double x_min = -5.0;
    double x_max = 5.0;
    // Figure 2 and 3.
    double bias = 0.001;
    double mse = 0.01;
    double u = 0.5;
    double mse_max_fig3 = 2.0;
    // Figure 4: MSE in (0, mse_max_fig4) -> SA budget for each y.
    std::vector<double> y_values{0.0, 0.5};
    double mse_max_fig4 = 0.1;
    double t = 1.0;
    double q = 1.001;
    double beta0 = 1.0;
    std::size_t points = 512;
    // Figure 5 reuses the comparison parameters.
    ComparisonParams comparison;
};

/// CSV data behind figures 1-5.
///   1: x, density_u=<u>...
///   2: u, t_bias, t_mse
///   3: u, constraint, mse, t_mse
///   4: mse, n_sa_y=<y>...
///   5: n, sa_temperature, theta_mh, theta_sa
CsvTable emit_figure_data(int figure_id, const FigureParams& params = {});

}  // namespace bpdn
