#include <doctest.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <set>

#include "bpdn/criteria.hpp"
#include "bpdn/error.hpp"

using namespace bpdn;

namespace {

CriterionRun small_run(std::size_t n = 500, std::size_t m = 40) {
    CriterionRun run;
    run.chain_length = n;
    run.replicates = m;
    run.seed = 7;
    return run;
}

}  // namespace

TEST_CASE("design distributions") {
    Rng rng(derive_seed(71, 0));
    const std::size_t n = 200000;
    double beta_sum = 0.0, pareto_sum = 0.0, general_sum = 0.0, pareto_min = 1e300;
    const auto beta = DesignDistribution::beta(1.0, 3.0);
    const auto pareto = DesignDistribution::pareto(3.0, 1.0);
    const auto general = DesignDistribution::beta(2.0, 5.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = beta.sample(rng);
        CHECK_UNARY(u > 0.0 && u < 1.0);
        beta_sum += u;
        const double y = pareto.sample(rng);
        pareto_min = std::min(pareto_min, y);
        pareto_sum += y;
        general_sum += general.sample(rng);
    }
    CHECK(beta_sum / n == doctest::Approx(0.25).epsilon(0.01));
    CHECK(pareto_sum / n == doctest::Approx(1.5).epsilon(0.02));
    CHECK(general_sum / n == doctest::Approx(2.0 / 7.0).epsilon(0.01));
    CHECK(pareto_min >= 1.0);
    CHECK_THROWS_AS(DesignDistribution::beta(0.0, 3.0), InvalidArgument);
    CHECK_THROWS_AS(DesignDistribution::pareto(3.0, -1.0), InvalidArgument);
}

TEST_CASE("exact limit-law samplers drive every criterion toward 0") {
    for (auto regime : {Regime::interior, Regime::boundary, Regime::exterior}) {
        CAPTURE(to_string(regime));
        auto run = small_run(250, 200);
        const auto coarse = evaluate_criteria(regime, 1.0, run, limit_law_sampler());
        run.chain_length = 16000;
        const auto fine = evaluate_criteria(regime, 1.0, run, limit_law_sampler());
        CHECK(coarse.f1 >= 0.0);
        CHECK(coarse.f2 >= 0.0);
        // Monte Carlo error shrinks like N^(-1/2): a factor 8 for 64 times more samples.
        CHECK(fine.f1 < coarse.f1 / 3.0);
        CHECK(fine.f2 < coarse.f2 / 3.0);
    }
}

TEST_CASE("MH criteria are nonnegative and deterministic") {
    for (auto regime : {Regime::interior, Regime::boundary, Regime::exterior}) {
        auto run = small_run();
        const auto a = evaluate_criteria(regime, 1.0, run);
        const auto b = evaluate_criteria(regime, 1.0, run);
        CHECK(a.f1 == b.f1);
        CHECK(a.f2 == b.f2);
        CHECK(a.f1 >= 0.0);
        CHECK(a.f2 >= 0.0);
        run.threads = 3;
        const auto c = evaluate_criteria(regime, 1.0, run);
        CHECK(a.f1 == c.f1);
        CHECK(a.f2 == c.f2);
    }
    const auto run = small_run();
    CHECK(f1_interior(1.0, run) == evaluate_criteria(Regime::interior, 1.0, run).f1);
    CHECK(f2_boundary(9.0, run) == evaluate_criteria(Regime::boundary, 9.0, run).f2);
    CHECK(f2_exterior(16.0, run) == evaluate_criteria(Regime::exterior, 16.0, run).f2);
}

TEST_CASE("every proposal variance sees the same design points") {
    std::mutex lock;
    std::map<double, std::set<double>> seen;
    const ChainSampler spy = [&](double y, double sigma2, const CriterionRun&, std::uint64_t) {
        std::lock_guard guard(lock);
        seen[sigma2].insert(y);
        return std::vector<double>{y};
    };
    const auto run = small_run(10, 30);
    rank_proposals({{1.0, 9.0}}, Regime::exterior, run, spy);
    REQUIRE(seen.size() == 2);
    CHECK(seen[1.0] == seen[9.0]);
    CHECK(seen[1.0].size() == 30);
    for (double y : seen[1.0]) CHECK(y >= run.t);
}

TEST_CASE("ranking: argmin of f1 + f2 with ties toward the smaller variance") {
    const ChainSampler flat = [](double y, double, const CriterionRun&, std::uint64_t) {
        return std::vector<double>{y};
    };
    const auto run = small_run(10, 10);
    const auto tied = rank_proposals({{16.0, 4.0, 9.0}}, Regime::exterior, run, flat);
    CHECK(tied.best_sigma2 == 4.0);
    CHECK(tied.rows.size() == 3);
    CHECK(tied.rows[0].sigma2 == 16.0);

    // Bias grows with the variance: the smallest wins outright.
    const ChainSampler biased = [](double y, double s2, const CriterionRun& r, std::uint64_t) {
        return std::vector<double>{y - r.t + s2};
    };
    const auto ranked = rank_proposals({{9.0, 1.0, 16.0}}, Regime::exterior, run, biased);
    CHECK(ranked.best_sigma2 == 1.0);
    CHECK(ranked.rows[1].f1 == doctest::Approx(1.0));
    for (const auto& row : ranked.rows) CHECK(row.sum() == row.f1 + row.f2);
}

TEST_CASE("proposal family validation") {
    const auto run = small_run(10, 2);
    CHECK_THROWS_AS(rank_proposals({{}}, Regime::interior, run), InvalidArgument);
    CHECK_THROWS_AS(rank_proposals({{1.0, -1.0}}, Regime::interior, run), InvalidArgument);
    CHECK_THROWS_AS(rank_proposals({{1.0, 1.0}}, Regime::interior, run), InvalidArgument);
    CHECK_THROWS_AS(evaluate_criteria(Regime::interior, 0.0, run), InvalidArgument);
    auto bad = run;
    bad.burn_in = 10;
    CHECK_THROWS_AS(evaluate_criteria(Regime::interior, 1.0, bad), InvalidArgument);
}

TEST_CASE("boundary bias term") {
    CHECK(boundary_bias_term({-1.0, 2.0, 4.0}, 1.0, 0.1) ==
          doctest::Approx(std::abs(3.0 - std::sqrt(0.2 / std::numbers::pi))));
    CHECK_THROWS_AS(boundary_bias_term({-1.0, 0.0}, 1.0, 0.1), NumericalError);
    const ChainSampler empty = [](double, double, const CriterionRun&, std::uint64_t) {
        return std::vector<double>{};
    };
    CHECK_THROWS_AS(evaluate_criteria(Regime::boundary, 1.0, small_run(10, 2), empty),
                    NumericalError);
}

TEST_CASE("chain start options") {
    CHECK(parse_chain_start("data") == ChainStart::data);
    CHECK(std::string(to_string(ChainStart::solution)) == "solution");
    CHECK_THROWS_AS(parse_chain_start("origin"), InvalidArgument);
    auto run = small_run(1, 1);
    run.temperature = 1e-12;  // uphill moves are rejected
    const auto sampler = mh_sampler();
    run.start = ChainStart::zero;
    CHECK(sampler(3.0, 1.0, run, 1).front() == 0.0);
    run.start = ChainStart::data;
    // Only downhill moves survive: the state stays where F is below F(3) = 3.5.
    const double from_data = sampler(3.0, 1.0, run, 1).front();
    CHECK(from_data > 1.0);
    CHECK(from_data <= 3.0);
    CHECK(from_data != 2.0);
    run.start = ChainStart::solution;
    CHECK(sampler(3.0, 1.0, run, 1).front() == 2.0);
}
