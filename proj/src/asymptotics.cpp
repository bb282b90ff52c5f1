#include "bpdn/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bpdn/error.hpp"

namespace bpdn {

using detail::require;

namespace {

void require_interior(double u) {
    require(u >= 0.0 && u < 1.0, "interior law requires u in [0, 1)");
}

}  // namespace

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::interior: return "interior";
        case Regime::boundary: return "boundary";
        case Regime::exterior: return "exterior";
    }
    return "?";
}

Regime parse_regime(const std::string& name) {
    if (name == "interior") return Regime::interior;
    if (name == "boundary") return Regime::boundary;
    if (name == "exterior") return Regime::exterior;
    throw InvalidArgument("unknown regime: " + name);
}

Regime classify_regime(double y, double t) {
    require(t > 0.0, "t must be positive");
    const double gap = std::abs(y) - t;
    if (std::abs(gap) <= 1e-12 * t) return Regime::boundary;
    return gap < 0.0 ? Regime::interior : Regime::exterior;
}

double interior_density(double u, double x) {
    require_interior(u);
    const double rate = x >= 0.0 ? 1.0 - u : 1.0 + u;
    return 0.5 * (1.0 - u * u) * std::exp(-std::abs(x) * rate);
}

double interior_cdf(double u, double x) {
    require_interior(u);
    if (x < 0.0) return 0.5 * (1.0 - u) * std::exp((1.0 + u) * x);
    return 1.0 - 0.5 * (1.0 + u) * std::exp(-(1.0 - u) * x);
}

double sample_interior(double u, Rng& rng) {
    require_interior(u);
    const double branch = rng.uniform();
    if (branch < 0.5 * (1.0 - u)) return -rng.exponential(1.0 + u);
    return rng.exponential(1.0 - u);
}

double m1(double u) {
    require_interior(u);
    return 2.0 * u / (1.0 - u * u);
}

double m2(double u) {
    require_interior(u);
    return (1.0 - u) / ((1.0 + u) * (1.0 + u)) + (1.0 + u) / ((1.0 - u) * (1.0 - u));
}

double boundary_law(double t, BoundaryBranch branch, Rng& rng) {
    require(t > 0.0, "t must be positive");
    if (branch == BoundaryBranch::negative) return -rng.exponential(2.0);
    return std::abs(std::sqrt(t) * rng.normal());
}

double exterior_law(double t, Rng& rng) {
    require(t > 0.0, "t must be positive");
    return std::sqrt(t) * rng.normal();
}

double normal_cdf(double x, double variance) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

LimitLaw1D LimitLaw1D::interior(double u) {
    require(u > -1.0 && u < 1.0, "interior law requires |u| < 1");
    return {Regime::interior, u};
}

LimitLaw1D LimitLaw1D::boundary(double t) {
    require(t > 0.0, "t must be positive");
    return {Regime::boundary, t};
}

LimitLaw1D LimitLaw1D::exterior(double t) {
    require(t > 0.0, "t must be positive");
    return {Regime::exterior, t};
}

LimitLaw1D LimitLaw1D::for_data(double y, double t) {
    switch (classify_regime(y, t)) {
        case Regime::interior: return interior(y / t);
        case Regime::boundary: return boundary(t);
        case Regime::exterior: return exterior(t);
    }
    throw InvalidArgument("unreachable regime");
}

double LimitLaw1D::density(double x) const {
    switch (regime_) {
        case Regime::interior:
            return param_ >= 0.0 ? interior_density(param_, x) : interior_density(-param_, -x);
        case Regime::boundary:
            return x < 0.0 ? 0.0
                           : 2.0 * std::exp(-x * x / (2.0 * param_)) /
                                 std::sqrt(2.0 * std::numbers::pi * param_);
        case Regime::exterior:
            return std::exp(-x * x / (2.0 * param_)) / std::sqrt(2.0 * std::numbers::pi * param_);
    }
    return 0.0;
}

double LimitLaw1D::cdf(double x) const {
    switch (regime_) {
        case Regime::interior:
            return param_ >= 0.0 ? interior_cdf(param_, x) : 1.0 - interior_cdf(-param_, -x);
        case Regime::boundary:
            return x <= 0.0 ? 0.0 : std::erf(x / std::sqrt(2.0 * param_));
        case Regime::exterior:
            return normal_cdf(x, param_);
    }
    return 0.0;
}

double LimitLaw1D::sample(Rng& rng) const {
    switch (regime_) {
        case Regime::interior:
            return param_ >= 0.0 ? sample_interior(param_, rng) : -sample_interior(-param_, rng);
        case Regime::boundary: return boundary_law(param_, BoundaryBranch::positive, rng);
        case Regime::exterior: return exterior_law(param_, rng);
    }
    return 0.0;
}

double LimitLaw1D::mean() const {
    switch (regime_) {
        case Regime::interior: return param_ >= 0.0 ? m1(param_) : -m1(-param_);
        case Regime::boundary: return std::sqrt(2.0 * param_ / std::numbers::pi);
        case Regime::exterior: return 0.0;
    }
    return 0.0;
}

double LimitLaw1D::second_moment() const {
    switch (regime_) {
        case Regime::interior: return m2(std::abs(param_));
        case Regime::boundary:
        case Regime::exterior: return param_;
    }
    return 0.0;
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf) {
    require(!sorted_samples.empty(), "ks_statistic: no samples");
    require(std::is_sorted(sorted_samples.begin(), sorted_samples.end()),
            "ks_statistic: samples must be sorted");
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = cdf(sorted_samples[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return d;
}

}  // namespace bpdn
