#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bpdn/error.hpp"
#include "bpdn/rng.hpp"
#include "bpdn/temperature.hpp"

using namespace bpdn;

TEST_CASE("interior temperatures") {
    CHECK(temp_from_bias_interior(0.01, 0.5) == doctest::Approx(0.0075));
    CHECK(temp_from_bias_interior(0.001, 0.999) < 1e-5);
    CHECK_THROWS_AS(temp_from_bias_interior(0.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS(temp_from_bias_interior(0.01, 0.0), InvalidArgument);
    CHECK(temp_from_mse_interior(3.5e-4, 0.5) == doctest::Approx(0.0075));
    CHECK(temp_from_mse_interior(0.01, 0.0) == doctest::Approx(std::sqrt(0.005)));
    CHECK(temp_from_mse_interior(0.04, 0.3) ==
          doctest::Approx(2.0 * temp_from_mse_interior(0.01, 0.3)));
    CHECK_THROWS_AS(temp_from_mse_interior(0.0, 0.5), InvalidArgument);
}

TEST_CASE("interior constraint") {
    CHECK(interior_constraint(0.5) == doctest::Approx(2.0 / 7.0));
    CHECK(interior_constraint(1e-6) < 1e-10);
    double previous = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double c = interior_constraint(k / 1000.0);
        CHECK(c > previous);
        previous = c;
    }
    CHECK(0.01 * 0.01 / 3.5e-4 == doctest::Approx(interior_constraint(0.5)));
}

TEST_CASE("bias and MSE temperatures agree exactly on the constraint") {
    std::mt19937_64 eng(derive_seed(61, 0));
    std::uniform_real_distribution<double> bd(1e-4, 0.1), ud(0.01, 0.99);
    for (int k = 0; k < 100; ++k) {
        const double b = bd(eng), u = ud(eng);
        const double mse = b * b / interior_constraint(u);
        CHECK(std::abs(temp_from_bias_interior(b, u) - temp_from_mse_interior(mse, u)) <=
              1e-12 * temp_from_bias_interior(b, u));
        CHECK(std::abs(temp_from_bias_interior(b, u) - temp_from_mse_interior(1.02 * mse, u)) >
              1e-3 * temp_from_bias_interior(b, u));
    }
}

TEST_CASE("temperatures decrease in u for a fixed bias") {
    double previous = 1e300;
    for (int k = 1; k < 100; ++k) {
        const double t = temp_from_bias_interior(0.01, k / 100.0);
        CHECK(t > 0.0);
        CHECK(t < previous);
        previous = t;
    }
}

TEST_CASE("boundary and exterior temperatures") {
    CHECK(temp_boundary_from_bias(0.1, 1.0) == doctest::Approx(std::numbers::pi * 0.01 / 2.0));
    const double mse = std::numbers::pi * 0.01 / 2.0;
    CHECK(temp_boundary_from_mse(mse, 1.0) == doctest::Approx(temp_boundary_from_bias(0.1, 1.0)));
    CHECK(boundary_pair_consistent(0.1, mse));
    CHECK_FALSE(boundary_pair_consistent(0.1, 0.1));
    CHECK(temp_exterior(0.05, 1.0) == doctest::Approx(0.05));
    CHECK(temp_exterior(0.05, 2.0) == doctest::Approx(0.025));
    CHECK(temp_exterior(0.05, 1e9) < 1e-9);
}

TEST_CASE("consistent_temperature") {
    CHECK(consistent_temperature({Regime::interior, 0.5, 0.01, 3.5e-4}) == doctest::Approx(0.0075));
    CHECK(consistent_temperature({Regime::boundary, 1.0, 0.1, std::numbers::pi * 0.01 / 2.0}) ==
          doctest::Approx(0.015708).epsilon(1e-4));
    CHECK(consistent_temperature({Regime::exterior, 1.0, std::nullopt, 0.01}) ==
          doctest::Approx(0.01));
    CHECK_THROWS_AS(consistent_temperature({Regime::boundary, 1.0, 0.1, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(consistent_temperature({Regime::interior, 0.5, 0.0102, 3.5e-4}),
                    InvalidArgument);
    CHECK(consistent_temperature({Regime::interior, 0.5, 0.0102, 3.5e-4},
                                 relaxed_constraint_tolerance) == doctest::Approx(0.0075));
    CHECK_THROWS_AS(consistent_temperature({Regime::exterior, 1.0, 0.1, 0.01}), InvalidArgument);
    try {
        consistent_temperature({Regime::interior, 0.5, 0.02, 3.5e-4});
    } catch (const InvalidArgument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("0.015") != std::string::npos);
        CHECK(msg.find("0.0075") != std::string::npos);
    }
}

TEST_CASE("temperature curves") {
    const auto curves = temperature_curves(0.001, 0.01);
    REQUIRE(curves.size() == 512);
    CHECK(curves.front().u == doctest::Approx(0.001));
    CHECK(curves.back().u == doctest::Approx(0.999));
    for (const auto& c : curves) {
        CHECK(c.t_bias == doctest::Approx(temp_from_bias_interior(0.001, c.u)));
        CHECK(c.t_mse == doctest::Approx(temp_from_mse_interior(0.01, c.u)));
        CHECK(c.constraint == doctest::Approx(interior_constraint(c.u)));
    }
    CHECK(temperature_from_mse(Regime::exterior, 2.0, 0.1) == doctest::Approx(0.05));
}
