#include "bpdn/temperature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bpdn/error.hpp"

namespace bpdn {

using detail::require;

double temp_from_bias_interior(double b, double u) {
    require(b > 0.0, "bias must be positive");
    require(u > 0.0 && u < 1.0, "bias control needs u in (0, 1); at u = 0 the bias vanishes");
    return b / m1(u);
}

double temp_from_mse_interior(double mse, double u) {
    require(mse > 0.0, "mean square error must be positive");
    return std::sqrt(mse / m2(u));
}

double interior_constraint(double u) {
    const double first = m1(u);
    return first * first / m2(u);
}

double temp_boundary_from_bias(double b, double t) {
    require(b > 0.0 && t > 0.0, "bias and t must be positive");
    return std::numbers::pi * b * b / (2.0 * t);
}

double temp_boundary_from_mse(double mse, double t) {
    require(mse > 0.0 && t > 0.0, "mean square error and t must be positive");
    return mse / t;
}

bool boundary_pair_consistent(double b, double mse, double rel_tol) {
    const double implied = std::numbers::pi * b * b / 2.0;
    return std::abs(mse - implied) <= rel_tol * std::max(std::abs(mse), std::abs(implied));
}

double temp_exterior(double mse, double t) {
    require(mse > 0.0 && t > 0.0, "mean square error and t must be positive");
    return mse / t;
}

double temperature_from_mse(Regime regime, double parameter, double mse) {
    switch (regime) {
        case Regime::interior: return temp_from_mse_interior(mse, std::abs(parameter));
        case Regime::boundary: return temp_boundary_from_mse(mse, parameter);
        case Regime::exterior: return temp_exterior(mse, parameter);
    }
    throw InvalidArgument("unreachable regime");
}

namespace {

[[noreturn]] void throw_mismatch(double from_bias, double from_mse) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "bias and MSE targets are incompatible: T(b) = " << from_bias
        << ", T(MSE) = " << from_mse;
    throw InvalidArgument(msg.str());
}

bool close(double a, double b, double rel_tol) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

double consistent_temperature(const TemperatureTarget& target, double rel_tol) {
    require(target.mse > 0.0, "mean square error must be positive");
    require(rel_tol >= 0.0, "tolerance must be nonnegative");
    switch (target.regime) {
        case Regime::interior: {
            const double u = std::abs(target.parameter);
            const double from_mse = temp_from_mse_interior(target.mse, u);
            if (!target.bias) return from_mse;
            const double from_bias = temp_from_bias_interior(*target.bias, u);
            if (!close(from_bias, from_mse, rel_tol)) throw_mismatch(from_bias, from_mse);
            return from_mse;
        }
        case Regime::boundary: {
            const double from_mse = temp_boundary_from_mse(target.mse, target.parameter);
            if (!target.bias) return from_mse;
            const double from_bias = temp_boundary_from_bias(*target.bias, target.parameter);
            if (!boundary_pair_consistent(*target.bias, target.mse, rel_tol))
                throw_mismatch(from_bias, from_mse);
            return from_mse;
        }
        case Regime::exterior:
            require(!target.bias || *target.bias == 0.0,
                    "the bias is identically zero in the exterior regime");
            return temp_exterior(target.mse, target.parameter);
    }
    throw InvalidArgument("unreachable regime");
}

std::vector<TemperatureCurvePoint> temperature_curves(double b, double mse, std::size_t points) {
    require(points >= 2, "need at least two grid points");
    std::vector<TemperatureCurvePoint> out;
    out.reserve(points);
    const double lo = 0.001;
    const double hi = 0.999;
    for (std::size_t k = 0; k < points; ++k) {
        const double u = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        out.push_back({u, temp_from_bias_interior(b, u), temp_from_mse_interior(mse, u),
                       interior_constraint(u)});
    }
    return out;
}

}  // namespace bpdn
