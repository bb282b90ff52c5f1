#pragma once

#include <optional>
#include <vector>

#include "bpdn/asymptotics.hpp"

namespace bpdn {

/// Target bias and mean square error for the MH estimator of soft(y, t).
/// `parameter` is u = y / t for the interior regime and t otherwise.
struct TemperatureTarget {
    Regime regime = Regime::interior;
    double parameter = 0.5;
    std::optional<double> bias;  ///< ignored (must be 0 if set) in the exterior regime
    double mse = 0.0;
};

/// Relative tolerances for the bias/MSE compatibility check.
inline constexpr double strict_constraint_tolerance = 1e-6;
inline constexpr double relaxed_constraint_tolerance = 0.05;

/// T(b, u) = b / m1(u). Errors when b <= 0 or u is outside (0, 1).
double temp_from_bias_interior(double b, double u);
/// T(MSE, u) = sqrt(MSE / m2(u)).
double temp_from_mse_interior(double mse, double u);
/// m1(u)^2 / m2(u): the value b^2 / MSE must take for both temperatures to agree.
double interior_constraint(double u);

/// pi b^2 / (2 t).
double temp_boundary_from_bias(double b, double t);
/// MSE / t.
double temp_boundary_from_mse(double mse, double t);
/// MSE == pi b^2 / 2 within relative tolerance.
bool boundary_pair_consistent(double b, double mse, double rel_tol = 1e-9);

/// MSE / t; the bias vanishes in this regime.
double temp_exterior(double mse, double t);

/// Checks the regime's bias/MSE constraint and returns the common temperature.
/// Throws InvalidArgument naming both candidates when they disagree.
double consistent_temperature(const TemperatureTarget& target,
                              double rel_tol = strict_constraint_tolerance);

/// Temperature fixed by the MSE alone (interior, boundary or exterior).
double temperature_from_mse(Regime regime, double parameter, double mse);

struct TemperatureCurvePoint {
    double u;
    double t_bias;
    double t_mse;
    double constraint;
};

/// 512-point uniform grid on [0.001, 0.999] of u -> T(b, u), T(MSE, u), m1^2/m2.
std::vector<TemperatureCurvePoint> temperature_curves(double b, double mse,
                                                      std::size_t points = 512);

}  // namespace bpdn
