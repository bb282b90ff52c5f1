#include <doctest.h>

#include <cmath>
#include <string>

#include "bpdn/error.hpp"
#include "bpdn/harness.hpp"

using namespace bpdn;

namespace {

double as_double(const CsvTable::Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    return static_cast<double>(std::get<long long>(cell));
}

bool has_metadata(const CsvTable& table, const std::string& needle) {
    for (const auto& line : table.metadata())
        if (line.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("table ids map to regimes") {
    CHECK(table_regime(1) == Regime::interior);
    CHECK(table_regime(2) == Regime::boundary);
    CHECK(table_regime(3) == Regime::exterior);
    CHECK_THROWS_AS(table_regime(4), InvalidArgument);
    CHECK(default_proposal_family().variances == std::vector<double>{1.0, 9.0, 16.0});
}

TEST_CASE("criterion CSV layout") {
    CriterionRun run;
    run.chain_length = 200;
    run.replicates = 10;
    const auto report = run_table(3, run);
    const auto table = criterion_csv(report);
    CHECK(table.header() == std::vector<std::string>{"proposal_sigma2", "f1", "f2", "f1_plus_f2"});
    REQUIRE(table.rows().size() == 3);
    for (const auto& row : table.rows())
        CHECK(as_double(row[3]) == doctest::Approx(as_double(row[1]) + as_double(row[2])));
    CHECK(has_metadata(table, "regime=exterior"));
    CHECK(has_metadata(table, "best_sigma2="));
    CHECK(has_metadata(table, "start=solution"));
    CHECK(table.str() == criterion_csv(run_table(3, run)).str());
}

TEST_CASE("table 4 running averages") {
    const ChainSampler constant = [](double, double, const CriterionRun& run, std::uint64_t) {
        return std::vector<double>(run.chain_length, 0.01);
    };
    const Table4Params params;
    const auto report = run_table4(params, constant);
    REQUIRE(report.rows.size() == 3);
    CHECK(report.temperature > 0.0);
    for (const auto& row : report.rows) {
        CHECK(row.b_n == doctest::Approx(params.bias));
        CHECK(row.mse_n == doctest::Approx(1e-4));
    }
    const auto table = table4_csv(params, report);
    CHECK(table.header() == std::vector<std::string>{"n", "b_n", "mse_n"});
    CHECK(std::get<long long>(table.rows()[2][0]) == 8000);

    Table4Params bad;
    bad.n_list = {};
    CHECK_THROWS_AS(run_table4(bad), InvalidArgument);
    bad.n_list = {0};
    CHECK_THROWS_AS(run_table4(bad), InvalidArgument);

    const auto mh = run_table4();
    CHECK(mh.rows.back().b_n > 0.0);
    CHECK(mh.rows.back().mse_n > 0.0);
}

TEST_CASE("target temperature follows the regime of y") {
    CHECK(target_temperature(2.0, 1.0, 0.0, 0.04) == doctest::Approx(0.04));
    CHECK(target_temperature(0.0, 1.0, 0.0, 0.04) == doctest::Approx(std::sqrt(0.04 / 2.0)));
    CHECK_THROWS_AS(target_temperature(0.5, 0.0, 0.01, 0.01), InvalidArgument);
}

TEST_CASE("MH and SA comparison") {
    ComparisonParams params;
    params.replicates = 100;
    const auto report = run_comparison(params);
    CHECK(report.n_budget == 4896);
    CHECK(report.target == 0.0);
    CHECK(report.mh_final.size() == 100);
    CHECK(report.sa_trajectory.size() == report.n_budget);
    CHECK(report.sa_temperatures.back() == doctest::Approx(report.temperature).epsilon(0.002));
    CHECK(report.sa_within >= 0.9);
    CHECK(report.mh_within >= 0.9);

    params.threads = 3;
    const auto threaded = run_comparison(params);
    CHECK(threaded.sa_final == report.sa_final);
    CHECK(threaded.mh_final == report.mh_final);

    const auto table = comparison_csv(params, report);
    CHECK(table.rows().size() == 100);
    CHECK(has_metadata(table, "n_budget=4896"));

    ComparisonParams hot;
    hot.y = 2.0;
    hot.bias = 0.0;
    hot.mse = 10.0;  // T = 10 > T0: nothing to anneal
    CHECK_THROWS_AS(run_comparison(hot), InvalidArgument);
}

TEST_CASE("figure schemas") {
    FigureParams p;
    p.points = 64;
    const auto f1 = emit_figure_data(1, p);
    CHECK(f1.header() ==
          std::vector<std::string>{"x", "density_u=0", "density_u=0.4", "density_u=0.9"});
    CHECK(f1.rows().size() == 64);
    CHECK(as_double(f1.rows().front()[0]) == -5.0);
    CHECK(as_double(f1.rows().back()[0]) == 5.0);

    CHECK(emit_figure_data(2, p).header() == std::vector<std::string>{"u", "t_bias", "t_mse"});
    CHECK(emit_figure_data(3, p).header() ==
          std::vector<std::string>{"u", "constraint", "mse", "t_mse"});

    const auto f4 = emit_figure_data(4, p);
    CHECK(f4.header() == std::vector<std::string>{"mse", "n_sa_y=0", "n_sa_y=0.5"});
    for (std::size_t k = 1; k < f4.rows().size(); ++k)
        for (std::size_t c = 1; c < 3; ++c)
            CHECK(std::get<long long>(f4.rows()[k][c]) <= std::get<long long>(f4.rows()[k - 1][c]));

    const auto f5 = emit_figure_data(5, p);
    CHECK(f5.header() == std::vector<std::string>{"n", "sa_temperature", "theta_mh", "theta_sa"});
    CHECK(f5.rows().size() == 4896);
    CHECK(f5.str() == emit_figure_data(5, p).str());

    CHECK_THROWS_AS(emit_figure_data(6, p), InvalidArgument);
    p.points = 1;
    CHECK_THROWS_AS(emit_figure_data(1, p), InvalidArgument);
}
