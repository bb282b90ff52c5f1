#pragma once

#include <functional>
#include <span>
#include <string>

#include "bpdn/rng.hpp"

namespace bpdn {

/// The three one-dimensional cases |y| < t, |y| = t, |y| > t.
enum class Regime { interior, boundary, exterior };

const char* to_string(Regime r) noexcept;
Regime parse_regime(const std::string& name);
/// Classifies (y, t); |y| within 1e-12 * t of t counts as boundary.
Regime classify_regime(double y, double t);

// Interior law of X_T(y, t) / T for u = y / t in [0, 1): the mixture
//   (1 - u)/2 * (-Exp(1 + u))  +  (1 + u)/2 * Exp(1 - u).

/// ((1 - u^2) / 2) exp(-|x| (1 - sgn(x) u)).
double interior_density(double u, double x);
double interior_cdf(double u, double x);
double sample_interior(double u, Rng& rng);

/// First moment of the interior law, 2u / (1 - u^2). Defined on [0, 1).
double m1(double u);
/// Second moment, (1 - u)/(1 + u)^2 + (1 + u)/(1 - u)^2. Defined on [0, 1).
double m2(double u);

enum class BoundaryBranch { negative, positive };

/// Conditional limits at y = t: -Exp(2) on the negative branch (scale T),
/// |N(0, t)| on the positive branch (scale sqrt(T)).
double boundary_law(double t, BoundaryBranch branch, Rng& rng);
/// N(0, t), the limit of (X_T(y, t) - (y - t)) / sqrt(T) for y > t.
double exterior_law(double t, Rng& rng);

double normal_cdf(double x, double variance);

/// Closed-form zero-temperature law for one regime. Interior laws accept
/// u in (-1, 1) and use X(-y, t) = -X(y, t); the boundary law is the positive
/// branch |N(0, t)|, which carries all the mass in the limit.
class LimitLaw1D {
public:
    static LimitLaw1D interior(double u);
    static LimitLaw1D boundary(double t);
    static LimitLaw1D exterior(double t);
    /// The law matching (y, t), with the regime's natural rescaling.
    static LimitLaw1D for_data(double y, double t);

    Regime regime() const noexcept { return regime_; }
    /// u for interior laws, t otherwise.
    double parameter() const noexcept { return param_; }

    double density(double x) const;
    double cdf(double x) const;
    double sample(Rng& rng) const;
    double mean() const;
    double second_moment() const;

private:
    LimitLaw1D(Regime regime, double param) : regime_(regime), param_(param) {}

    Regime regime_;
    double param_;
};

/// sup_x |F_n(x) - cdf(x)| for sorted samples.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

}  // namespace bpdn
