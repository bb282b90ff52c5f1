#include "bpdn/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "bpdn/error.hpp"

namespace bpdn {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints, double rel_tol) {
    detail::require(a < b, "integration interval must be non-empty");
    breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                     [&](double x) { return !(x > a && x < b); }),
                      breakpoints.end());
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    breakpoints.insert(breakpoints.begin(), a);
    breakpoints.push_back(b);

    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    QuadratureResult out;
    double abs_sum = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        double err = 0.0;
        double l1 = 0.0;
        const double piece =
            gk::integrate(f, breakpoints[k], breakpoints[k + 1], 15, rel_tol, &err, &l1);
        out.value += piece;
        out.error_estimate += err;
        abs_sum += l1;
    }
    if (!std::isfinite(out.value) || out.error_estimate > rel_tol * std::max(abs_sum, 1e-300))
        throw NumericalError("adaptive quadrature did not converge");
    return out;
}

}  // namespace bpdn
