#include <doctest.h>

#include <cmath>
#include <map>

#include "bpdn/gibbs.hpp"
#include "bpdn/scaling.hpp"

using namespace bpdn;

namespace {

MhConfig mh_config(double temp, double sigma2, std::size_t n, std::uint64_t seed) {
    MhConfig c;
    c.temperature = temp;
    c.proposal_sigma2 = sigma2;
    c.chain_length = n;
    c.seed = seed;
    return c;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("very high temperature accepts almost everything") {
    const auto chain = mh_chain(scalar_problem(0.5, 1.0), mh_config(1e6, 1.0, 1000, 3));
    CHECK(chain.acceptance_rate() > 0.99);
    CHECK(chain.size() == 1000);
}

TEST_CASE("invalid configurations are rejected") {
    const auto p = scalar_problem(0.5, 1.0);
    CHECK_THROWS_AS(mh_chain(p, mh_config(0.1, 0.0, 10, 1)), InvalidArgument);
    CHECK_THROWS_AS(mh_chain(p, mh_config(0.0, 1.0, 10, 1)), InvalidArgument);
    CHECK_THROWS_AS(mh_chain(p, mh_config(0.1, 1.0, 0, 1)), InvalidArgument);
    auto c = mh_config(0.1, 1.0, 10, 1);
    c.burn_in = 10;
    CHECK_THROWS_AS(mh_chain(p, c), InvalidArgument);
    c.burn_in = 0;
    c.initial_state = Vector::Zero(2);
    CHECK_THROWS_AS(mh_chain(p, c), InvalidArgument);
    AnnealConfig a;
    a.q = 1.0;
    CHECK_THROWS_AS(sa_chain(p, a), InvalidArgument);
    CHECK_THROWS_AS(parse_proposal_kind("gibbs"), InvalidArgument);
    CHECK(parse_proposal_kind("rw") == ProposalKind::random_walk);
    CHECK(parse_proposal_kind("independence") == ProposalKind::independence);
}

TEST_CASE("non-finite energy names the offending state") {
    auto c = mh_config(0.1, 1.0, 10, 1);
    c.initial_state = Vector::Constant(1, 1e200);
    CHECK_THROWS_AS(mh_chain(scalar_problem(0.5, 1.0), c), NumericalError);
}

TEST_CASE("chains are deterministic given the seed") {
    Matrix a(2, 2);
    a << 1.0, 0.3, 0.2, 1.0;
    Vector y(2);
    y << 1.0, -0.5;
    const Problem p(a, y, 0.7);
    const auto c = mh_config(0.2, 0.5, 2000, 42);
    CHECK(mh_chain(p, c).values() == mh_chain(p, c).values());
    auto other = c;
    other.seed = 43;
    CHECK(mh_chain(p, c).values() != mh_chain(p, other).values());
    AnnealConfig s;
    s.chain_length = 500;
    s.seed = 9;
    CHECK(sa_chain(p, s).values() == sa_chain(p, s).values());
}

TEST_CASE("the 1D fast path is bit-identical to the general sampler") {
    for (auto kind : {ProposalKind::random_walk, ProposalKind::independence}) {
        for (double y : {0.5, 1.0, -2.0}) {
            auto c = mh_config(0.05, 0.3, 3000, 17);
            c.burn_in = 100;
            c.proposal = kind;
            c.initial_state = Vector::Constant(1, 0.25);
            const auto general = mh_chain(scalar_problem(y, 1.0), c);
            double rate = 0.0;
            const auto fast = mh_chain_1d(y, 1.0, c, &rate);
            CHECK(fast == general.values());
            CHECK(rate == general.acceptance_rate());
        }
    }
}

TEST_CASE("burn-in drops the leading states and acceptance counts every proposal") {
    auto c = mh_config(0.1, 1.0, 1000, 5);
    const auto full = mh_chain(scalar_problem(0.5, 1.0), c);
    c.burn_in = 250;
    const auto cut = mh_chain(scalar_problem(0.5, 1.0), c);
    REQUIRE(cut.size() == 750);
    CHECK(cut.state(0)[0] == full.state(250)[0]);
    CHECK(cut.proposed() == 1000);
    CHECK(cut.acceptance_rate() ==
          static_cast<double>(cut.accepted()) / static_cast<double>(cut.proposed()));
    CHECK(cut.temperatures().size() == cut.size());
    CHECK(cut.seed() == 5);
}

TEST_CASE("stationary moments agree with the quadrature oracle") {
    for (double y : {0.5, 1.0, 2.0}) {
        CAPTURE(y);
        auto c = mh_config(0.1, 1.0, 200000, derive_seed(31, static_cast<std::uint64_t>(y * 10)));
        c.burn_in = 5000;
        const auto x = mh_chain_1d(y, 1.0, c);
        std::vector<double> sq(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) sq[k] = x[k] * x[k];
        CHECK(std::abs(mean_of(x) - brute_force_gibbs_1d(y, 1.0, 0.1, 1)) <=
              3.0 * batch_means_standard_error(x));
        CHECK(std::abs(mean_of(sq) - brute_force_gibbs_1d(y, 1.0, 0.1, 2)) <=
              3.0 * batch_means_standard_error(sq));
    }
}

TEST_CASE("the independence sampler targets the same measure") {
    auto c = mh_config(0.1, 0.25, 200000, 77);
    c.proposal = ProposalKind::independence;
    c.burn_in = 1000;
    const auto x = mh_chain_1d(0.5, 1.0, c);
    CHECK(std::abs(mean_of(x) - brute_force_gibbs_1d(0.5, 1.0, 0.1, 1)) <=
          3.0 * batch_means_standard_error(x));
}

TEST_CASE("detailed balance: consecutive-state bin counts are symmetric") {
    auto c = mh_config(0.2, 0.5, 400000, 91);
    c.burn_in = 1000;
    const auto x = mh_chain_1d(0.5, 1.0, c);
    auto bin = [](double v) { return static_cast<int>(std::floor(v / 0.1)); };
    std::map<std::pair<int, int>, double> counts;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const int i = bin(x[k - 1]);
        const int j = bin(x[k]);
        if (i != j) counts[{i, j}] += 1.0;
    }
    int checked = 0;
    for (const auto& [key, n_ij] : counts) {
        if (key.first > key.second) continue;
        const double n_ji = counts.count({key.second, key.first}) ? counts[{key.second, key.first}] : 0.0;
        if (n_ij + n_ji < 200.0) continue;
        ++checked;
        CHECK(std::abs(n_ij - n_ji) <= 4.0 * std::sqrt(n_ij + n_ji));
    }
    CHECK(checked > 10);
}

TEST_CASE("annealing schedule") {
    CHECK(anneal_temperature(1.0, 1.001, 0) == 1.0);
    CHECK(anneal_temperature(2.0, 1.001, 0) == 0.5);
    CHECK(anneal_temperature(1.0, 1.001, 1000) == doctest::Approx(0.3677).epsilon(1e-3));

    AnnealConfig s;
    s.chain_length = 300;
    const auto chain = sa_chain(scalar_problem(0.5, 1.0), s);
    const auto& temps = chain.temperatures();
    REQUIRE(temps.size() == 300);
    CHECK(temps[0] == doctest::Approx(1.0 / 1.001));
    for (std::size_t k = 1; k < temps.size(); ++k) CHECK(temps[k] < temps[k - 1]);
}

TEST_CASE("sa_iterations examples and bracketing") {
    CHECK(sa_iterations(1.0, 1.0, 1.001) == 0);
    CHECK(sa_iterations(1.0, 0.0075, 1.001) == 4896);
    CHECK(sa_iterations(1.0, 0.1, 1.001) == 2304);
    CHECK_THROWS_AS(sa_iterations(1.0, 2.0, 1.001), InvalidArgument);
    CHECK_THROWS_AS(sa_iterations(1.0, 0.5, 1.0), InvalidArgument);
    for (double target : {0.5, 0.0075, 1e-4}) {
        const auto n = sa_iterations(1.0, target, 1.001);
        CHECK(anneal_temperature(1.0, 1.001, n) <= target);
        CHECK(anneal_temperature(1.0, 1.001, n - 1) > target);
    }
}

TEST_CASE("annealed trajectories settle near soft(0.5, 1) = 0") {
    const auto p = scalar_problem(0.5, 1.0);
    int close = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
        AnnealConfig s;
        s.chain_length = 5000;
        s.seed = derive_seed(51, r);
        const auto chain = sa_chain(p, s);
        if (std::abs(chain.state(chain.size() - 1)[0]) < 0.05) ++close;
    }
    CHECK(close >= 90);
}
