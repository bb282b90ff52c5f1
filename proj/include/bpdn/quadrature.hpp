#pragma once

#include <functional>
#include <vector>

namespace bpdn {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (61-point) on [a, b] with interior breakpoints at
/// which the integrand may have kinks. Throws NumericalError when the
/// estimated relative error exceeds `rel_tol` after refinement.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints = {}, double rel_tol = 1e-10);

}  // namespace bpdn
