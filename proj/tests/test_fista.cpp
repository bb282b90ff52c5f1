#include <doctest.h>

#include <random>

#include "bpdn/fista.hpp"
#include "bpdn/rng.hpp"

using namespace bpdn;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

using Idx = std::vector<std::size_t>;

}  // namespace

TEST_CASE("1D solutions in the three regimes") {
    SUBCASE("interior y = 0.5") {
        const auto sol = solve(scalar_problem(0.5, 1.0));
        CHECK(sol.x_star(0) == 0.0);
        CHECK(sol.xi(0) == doctest::Approx(0.5));
        CHECK(sol.partition.zero_set == Idx{0});
        CHECK(sol.partition.boundary.empty());
    }
    SUBCASE("boundary y = t") {
        const auto sol = solve(scalar_problem(1.0, 1.0));
        CHECK(sol.x_star(0) == 0.0);
        CHECK(sol.xi(0) == doctest::Approx(1.0));
        CHECK(sol.partition.boundary == Idx{0});
        CHECK(sol.partition.membership(0) == Membership::boundary);
    }
    SUBCASE("exterior y = 2") {
        const auto sol = solve(scalar_problem(2.0, 1.0));
        CHECK(sol.x_star(0) == doctest::Approx(1.0));
        CHECK(sol.xi(0) == doctest::Approx(1.0));
        CHECK(sol.partition.support == Idx{0});
        CHECK(sol.m == doctest::Approx(1.5));
    }
}

TEST_CASE("1D solver agrees with soft thresholding on a grid") {
    for (double y = -5.0; y <= 5.0; y += 0.37)
        for (double t : {0.1, 0.7, 2.5, 5.0})
            CHECK(std::abs(solve(scalar_problem(y, t)).x_star(0) - soft_threshold(y, t)) <= 1e-8);
}

TEST_CASE("dual_vector examples") {
    CHECK(dual_vector(scalar_problem(2.0, 1.0), vec({1.0}))(0) == doctest::Approx(1.0));
    const Problem id(Matrix::Identity(2, 2), vec({0.3, -0.7}), 1.0);
    const Vector xi = dual_vector(id, vec({0.0, 0.0}));
    CHECK(xi(0) == doctest::Approx(0.3));
    CHECK(xi(1) == doctest::Approx(-0.7));
    CHECK(dual_vector(id, vec({0.3, -0.7})).norm() == doctest::Approx(0.0));
}

TEST_CASE("classify_support examples") {
    const auto a = classify_support(vec({0.0, 2.0}), vec({0.4, 1.0}));
    CHECK(a.support == Idx{1});
    CHECK(a.zero_set == Idx{0});
    CHECK(a.boundary.empty());
    const auto b = classify_support(vec({0.0, 0.0}), vec({1.0, 0.2}));
    CHECK(b.zero_set == Idx{0, 1});
    CHECK(b.boundary == Idx{0});
    CHECK(b.interior_zero_set() == Idx{1});
    CHECK(b.certificate_set() == Idx{0});
    const auto c = classify_support(vec({1.0, -2.0}), vec({1.0, -1.0}));
    CHECK(c.zero_set.empty());
    CHECK(c.boundary.empty());
    CHECK(to_string(Membership::support) == std::string("S"));
    CHECK(to_string(Membership::zero) == std::string("I0"));
    CHECK(to_string(Membership::boundary) == std::string("dI0"));
}

TEST_CASE("uniqueness certificate") {
    CHECK(solve(scalar_problem(3.0, 1.0)).unique);
    CHECK(solve(scalar_problem(0.2, 1.0)).unique);

    // Two identical columns both in the support: singular Gram matrix.
    Matrix dup(2, 2);
    dup << 1.0, 1.0, 1.0, 1.0;
    const Problem p(dup, vec({3.0, 3.0}), 1.0);
    SupportPartition both;
    both.support = {0, 1};
    CHECK_FALSE(uniqueness_certificate(p, both));

    SupportPartition empty;
    empty.zero_set = {0, 1};
    CHECK(uniqueness_certificate(p, empty));
}

TEST_CASE("duplicated columns: Ax*, ||x*||_1 and xi do not depend on the start") {
    Matrix a(3, 3);
    a << 1.0, 1.0, 0.2, 0.5, 0.5, -1.0, -0.3, -0.3, 0.4;
    const Problem p(a, vec({2.0, 1.5, -0.5}), 0.5);
    const auto s1 = solve(p);
    const auto s2 = solve(p, {}, vec({3.0, -1.0, 0.5}));
    CHECK((p.a() * s1.x_star - p.a() * s2.x_star).norm() <= 1e-6);
    CHECK(std::abs(s1.x_star.lpNorm<1>() - s2.x_star.lpNorm<1>()) <= 1e-6);
    CHECK((s1.xi - s2.xi).norm() <= 1e-6);
    CHECK(std::abs(s1.m - s2.m) <= 1e-9);
}

TEST_CASE("KKT conditions hold on random problems") {
    std::mt19937_64 eng(derive_seed(21, 0));
    std::normal_distribution<double> g(0.0, 1.0);
    const SolverOptions opts;
    for (int k = 0; k < 50; ++k) {
        Matrix a(4, 6);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j) a(i, j) = g(eng);
        Vector y(4);
        for (int i = 0; i < 4; ++i) y(i) = 3.0 * g(eng);
        const Problem p(a, y, 0.5);
        const auto sol = solve(p, opts);
        CHECK(sol.gradient_mapping_norm <= opts.gradient_tolerance);
        for (Eigen::Index i = 0; i < 6; ++i)
            CHECK(std::abs(sol.xi(i)) <= 1.0 + opts.certificate_tolerance);
        for (auto i : sol.partition.support) {
            const auto j = static_cast<Eigen::Index>(i);
            CHECK(sol.xi(j) * (sol.x_star(j) > 0 ? 1.0 : -1.0) >=
                  1.0 - opts.certificate_tolerance);
        }
        CHECK(sol.partition.support.size() + sol.partition.zero_set.size() == 6);
        CHECK(sol.tolerance_used == opts.certificate_tolerance);
    }
}

TEST_CASE("gram_spectral_norm matches the largest eigenvalue") {
    Matrix a(3, 2);
    a << 1.0, 2.0, 0.0, 1.0, -1.0, 0.5;
    const Matrix g = a.transpose() * a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    CHECK(gram_spectral_norm(a) == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-8));
}

TEST_CASE("non-convergence reports the last iterate") {
    Matrix a(3, 3);
    a << 1.0, 0.9, 0.8, 0.9, 1.0, 0.9, 0.8, 0.9, 1.0;
    const Problem p(a, vec({5.0, -3.0, 4.0}), 0.1);
    SolverOptions opts;
    opts.max_iterations = 2;
    try {
        solve(p, opts);
        FAIL("expected SolveError");
    } catch (const SolveError& e) {
        CHECK(e.last_iterate().size() == 3);
        CHECK(e.residual() > opts.gradient_tolerance);
    }
}

TEST_CASE("invalid solver options are rejected") {
    SolverOptions opts;
    opts.gradient_tolerance = 0.0;
    CHECK_THROWS_AS(solve(scalar_problem(1.0, 1.0), opts), InvalidArgument);
    CHECK_THROWS_AS(solve(scalar_problem(1.0, 1.0), {}, vec({1.0, 2.0})), InvalidArgument);
}
